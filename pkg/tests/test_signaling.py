from fractions import Fraction

import numpy as np
import pytest

from blindalign import (
    MAGNITUDE_FLOOR,
    BeamformingSet,
    ChannelConfig,
    beamforming_vectors,
    block_index,
    brute_force_solve,
    build_schedule,
    check_config,
    closed_form_solution,
    draw_channels,
    group_profile,
    pattern_matrix,
    verify_alignment,
    verify_decodability,
    verify_schedule_end_to_end,
)

FIG_CFG = ChannelConfig(4, (0, 1, 2))
FIG_LAMBDA = (0, 0, 1, 0, 0, 1, 0, 0, 1, 0, 0, 1)


class TestBeamforming:
    def test_classic_3user_example(self):
        bf = beamforming_vectors([[0, 1, 0], [1, 0, 0], [0, 0, 1]])
        assert bf.v.tolist() == [[0, 1, 1, 0], [1, 1, 0, 0], [0, 0, 1, 1]]

    def test_2user_examples(self):
        assert beamforming_vectors([[1, 0], [0, 1]]).v.tolist() == [[1, 1, 0], [0, 1, 1]]
        assert beamforming_vectors([[0, 1], [1, 0]]).v.tolist() == [[0, 1, 1], [1, 1, 0]]

    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            beamforming_vectors([[1, 0, 0], [1, 0, 0], [0, 1, 0]])

    def test_vectors_identical_on_both_antennas(self):
        bf = beamforming_vectors(np.eye(4, dtype=int))
        assert bf.u is bf.v

    def test_straddle_property(self):
        from blindalign import enumerate_feasible_patterns

        for M in enumerate_feasible_patterns(4):
            bf = beamforming_vectors(M)
            for i in range(4):
                c = int(np.argmax(M[i]))
                support = np.flatnonzero(bf.v[i])
                assert support.tolist() == [c, c + 1]


class TestChannelDraws:
    def test_deterministic(self):
        a = draw_channels(FIG_CFG, seed=5, slot_range=range(0, 16))
        b = draw_channels(FIG_CFG, seed=5, slot_range=range(0, 16))
        for user in (1, 2, 3):
            for block in range(4):
                assert np.array_equal(a.coeffs(user, block), b.coeffs(user, block))

    def test_block_fading_semantics(self):
        ch = draw_channels(FIG_CFG, seed=9, slot_range=range(0, 16))
        # slots 1 and 3 sit in the same block of user 2; slot 5 does not
        assert np.array_equal(ch.slot_coeffs(2, 1), ch.slot_coeffs(2, 3))
        assert not np.array_equal(ch.slot_coeffs(2, 1), ch.slot_coeffs(2, 5))

    def test_seeds_differ(self):
        a = draw_channels(FIG_CFG, seed=1, slot_range=range(4))
        b = draw_channels(FIG_CFG, seed=2, slot_range=range(4))
        assert not np.array_equal(a.coeffs(1, 0), b.coeffs(1, 0))

    def test_magnitude_floor(self):
        ch = draw_channels(ChannelConfig(2, (0, 1)), seed=3, slot_range=range(0, 2000))
        mags = [abs(h) for (u, b), pair in ch._coeffs.items() for h in pair]
        assert min(mags) >= MAGNITUDE_FLOOR


class TestTupleVerifiers:
    def test_alignment_structural(self):
        slots = (3, 4, 5, 6)
        bf = beamforming_vectors(pattern_matrix(FIG_CFG, slots))
        for seed in range(20):
            ch = draw_channels(FIG_CFG, seed=seed, slot_range=range(3, 7))
            rep = verify_alignment(FIG_CFG, slots, bf, ch)
            assert rep.passed and rep.max_residual < 1e-12

    def test_misaligned_tuple_detected(self):
        # slots (3,5,6,7) cross two users in one transition; vectors built as
        # if the pattern were the identity straddle a real channel change
        bad_slots = (3, 5, 6, 7)
        fake = beamforming_vectors(np.eye(3, dtype=int))
        ch = draw_channels(FIG_CFG, seed=4, slot_range=range(3, 8))
        rep = verify_alignment(FIG_CFG, bad_slots, fake, ch)
        assert not rep.passed and rep.max_residual > 1e-3

    def test_zero_vector_convention(self):
        slots = (3, 4, 5, 6)
        bf = beamforming_vectors(pattern_matrix(FIG_CFG, slots))
        v = bf.v.copy()
        v[2] = 0
        ch = draw_channels(FIG_CFG, seed=4, slot_range=range(3, 7))
        rep = verify_alignment(FIG_CFG, slots, BeamformingSet(v=v), ch)
        assert rep.residuals[0, 2] == 0.0 and rep.residuals[1, 2] == 0.0

    def test_decodability_many_seeds(self):
        slots = (3, 4, 5, 6)
        bf = beamforming_vectors(pattern_matrix(FIG_CFG, slots))
        for seed in range(100):
            ch = draw_channels(FIG_CFG, seed=seed, slot_range=range(3, 7))
            assert verify_alignment(FIG_CFG, slots, bf, ch).passed
            assert verify_decodability(FIG_CFG, slots, bf, ch).passed

    def test_frozen_block_breaks_decodability(self):
        # force user 1's channel to repeat across its transition: its two
        # desired columns become proportional at receiver 1
        slots = (3, 4, 5, 6)
        bf = beamforming_vectors(pattern_matrix(FIG_CFG, slots))
        ch = draw_channels(FIG_CFG, seed=8, slot_range=range(3, 7))
        b0 = block_index(FIG_CFG, 1, 3)
        b1 = block_index(FIG_CFG, 1, 4)
        ch._coeffs[(1, b1)] = ch._coeffs[(1, b0)]
        rep = verify_decodability(FIG_CFG, slots, bf, ch)
        assert not rep.passed
        assert rep.min_singulars[0] < 1e-12

    def test_2user_tuple(self):
        cfg = ChannelConfig(3, (0, 1))
        sched = build_schedule(cfg, closed_form_solution(group_profile(cfg)))
        slots = sched.tuples[0].slots
        bf = beamforming_vectors(pattern_matrix(cfg, slots))
        for seed in range(50):
            ch = draw_channels(cfg, seed=seed, slot_range=range(min(slots), max(slots) + 1))
            assert verify_alignment(cfg, slots, bf, ch).passed
            assert verify_decodability(cfg, slots, bf, ch).passed


class TestEndToEnd:
    def test_reference_instance(self):
        sched = build_schedule(FIG_CFG, FIG_LAMBDA)
        summary = verify_schedule_end_to_end(FIG_CFG, sched, seed=0, trials=100)
        assert summary.passed
        assert summary.max_residual < 1e-9
        assert summary.min_singular > 1e-9
        assert summary.symbols_per_slot == Fraction(3, 2)

    def test_deterministic(self):
        sched = build_schedule(FIG_CFG, FIG_LAMBDA)
        a = verify_schedule_end_to_end(FIG_CFG, sched, seed=12, trials=10)
        b = verify_schedule_end_to_end(FIG_CFG, sched, seed=12, trials=10)
        assert a == b

    def test_both_certificates_of_nonunique_instance(self):
        cfg = ChannelConfig(11, (0, 3, 6))
        s = group_profile(cfg)
        sols = brute_force_solve(s, enumerate_all=True)
        assert len(sols) >= 2
        for lam in sols:
            sched = build_schedule(cfg, lam)
            summary = verify_schedule_end_to_end(cfg, sched, seed=21, trials=30)
            assert summary.passed, lam

    def test_infeasible_config_refused_upstream(self):
        cfg = ChannelConfig(8, (0, 3, 3))
        assert not check_config(cfg).feasible
        with pytest.raises(ValueError):
            closed_form_solution(group_profile(cfg))

    def test_trials_validation(self):
        sched = build_schedule(FIG_CFG, FIG_LAMBDA)
        with pytest.raises(ValueError):
            verify_schedule_end_to_end(FIG_CFG, sched, seed=0, trials=0)
