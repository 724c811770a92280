"""Turn a decomposition certificate into a concrete slot schedule and check it.

One period spans (K+1)*N slots / K(K+1) groups. Each super-symbol thread
takes one slot from each of K+1 consecutive groups; ``lam[g]`` threads start
at group g. Threads opened near the end of the period wrap: their trailing
slots carry indices past the period and are validated modulo the period.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .diophantine import verify_solution
from .pattern import (
    ChannelConfig,
    group_profile,
    group_slots,
    slot_group,
    pattern_matrix,
    is_feasible_pattern,
)

__all__ = [
    "SuperSymbol",
    "Schedule",
    "build_schedule",
    "ValidationReport",
    "validate_schedule",
    "dof_of_schedule",
    "schedule_to_dict",
    "schedule_from_dict",
]


@dataclass(frozen=True)
class SuperSymbol:
    """One thread: K+1 increasing slots, one per consecutive group."""

    start_group: int
    slots: tuple[int, ...]


@dataclass(frozen=True)
class Schedule:
    cfg: ChannelConfig
    lam: tuple[int, ...]
    tuples: tuple[SuperSymbol, ...]

    @property
    def period(self) -> int:
        return (self.cfg.K + 1) * self.cfg.N


def build_schedule(cfg: ChannelConfig, lam) -> Schedule:
    """Greedy slot assignment walking the groups of one period in order.

    Within a group, slots go in increasing order to open threads by start
    group (earliest first, creation order breaking ties), then to newly
    opened threads. Threads whose start group lies within K of the period
    end also consume the leading slots of groups 0..K-1 shifted by one
    period, which is how the infinite-horizon wraparound is represented.
    """
    s = group_profile(cfg)
    lam = tuple(int(v) for v in lam)
    if not verify_solution(s, lam):
        raise ValueError("lambda does not solve the group window equations")
    K = cfg.K
    m = K * (K + 1)
    period = (K + 1) * cfg.N

    slot_lists: dict[tuple[int, int], list[int]] = {
        (g, c): [] for g in range(m) for c in range(lam[g])
    }
    for i in range(m):
        slots_i = list(group_slots(cfg, i))
        pos = 0
        for j in range(i - K, i + 1):
            jm = j % m
            shift = period if j < 0 else 0
            for c in range(lam[jm]):
                if pos >= len(slots_i):
                    raise RuntimeError(f"group {i} oversubscribed")
                slot_lists[(jm, c)].append(slots_i[pos] + shift)
                pos += 1
        if pos != len(slots_i):
            raise RuntimeError(f"group {i} undersubscribed")

    tuples = sorted(
        (SuperSymbol(start_group=g, slots=tuple(sorted(sl)))
         for (g, _), sl in slot_lists.items()),
        key=lambda t: (t.start_group, t.slots[0]),
    )
    return Schedule(cfg=cfg, lam=lam, tuples=tuple(tuples))


@dataclass(frozen=True)
class ValidationReport:
    coverage_ok: bool
    consecutive_ok: bool
    patterns_ok: bool
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return self.coverage_ok and self.consecutive_ok and self.patterns_ok


def validate_schedule(sched: Schedule) -> ValidationReport:
    """Independent re-check of the three schedule invariants.

    Coverage: every residue class modulo the period is used exactly once.
    Consecutiveness: each thread's slots sit in K+1 consecutive groups
    starting at its declared start group. Patterns: each thread's pattern
    matrix is a permutation.
    """
    cfg = sched.cfg
    K = cfg.K
    m = K * (K + 1)
    period = sched.period
    failures: list[str] = []

    residues = [slot % period for t in sched.tuples for slot in t.slots]
    coverage_ok = len(residues) == period and len(set(residues)) == period
    if len(sched.tuples) != cfg.N:
        coverage_ok = False
        failures.append(f"coverage: {len(sched.tuples)} tuples, expected {cfg.N}")
    if not coverage_ok and not failures:
        failures.append("coverage: residues modulo the period are not a partition")

    consecutive_ok = True
    patterns_ok = True
    for t in sched.tuples:
        try:
            groups = [slot_group(cfg, n) for n in t.slots]
        except ValueError:
            groups = None
        if (
            groups is None
            or groups != list(range(groups[0], groups[0] + K + 1))
            or groups[0] % m != t.start_group
        ):
            consecutive_ok = False
            failures.append(f"consecutiveness: thread at group {t.start_group}, slots {t.slots}")
            continue
        if not is_feasible_pattern(pattern_matrix(cfg, t.slots)):
            patterns_ok = False
            failures.append(f"pattern: thread at group {t.start_group} is not a permutation")

    return ValidationReport(
        coverage_ok=coverage_ok,
        consecutive_ok=consecutive_ok,
        patterns_ok=patterns_ok,
        failures=tuple(failures),
    )


def dof_of_schedule(sched: Schedule) -> Fraction:
    """Delivered symbols per slot: 2K symbols per thread, N threads, (K+1)N slots."""
    K = sched.cfg.K
    return Fraction(2 * K, K + 1)


def schedule_to_dict(sched: Schedule) -> dict:
    """Canonical JSON-ready form (integers only, tuples in canonical order)."""
    return {
        "version": 1,
        "N": sched.cfg.N,
        "K": sched.cfg.K,
        "offsets": list(sched.cfg.offsets),
        "period": sched.period,
        "lambda": list(sched.lam),
        "tuples": [
            {"start_group": t.start_group, "slots": list(t.slots)}
            for t in sched.tuples
        ],
    }


def schedule_from_dict(data: dict) -> Schedule:
    """Parse the canonical form back; raises ValueError on malformed input."""
    if not isinstance(data, dict):
        raise ValueError("schedule document must be a JSON object")
    try:
        if data["version"] != 1:
            raise ValueError(f"unsupported schedule version {data['version']!r}")
        cfg = ChannelConfig(N=int(data["N"]), offsets=tuple(int(o) for o in data["offsets"]))
        if int(data["K"]) != cfg.K:
            raise ValueError("K does not match the number of offsets")
        if int(data["period"]) != (cfg.K + 1) * cfg.N:
            raise ValueError("period does not match (K+1)*N")
        lam = tuple(int(v) for v in data["lambda"])
        tuples = tuple(
            SuperSymbol(start_group=int(t["start_group"]),
                        slots=tuple(int(n) for n in t["slots"]))
            for t in data["tuples"]
        )
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed schedule document: {exc!r}") from exc
    return Schedule(cfg=cfg, lam=lam, tuples=tuples)
