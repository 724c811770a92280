"""Decomposition certificates: the cyclic window system and its solutions.

Feasibility is equivalent to solving sum(lam[i-K..i]) == s[i % K] in
nonnegative integers over one period of K(K+1) groups. lam[g] counts the
super-symbol threads starting at group g. This script solves the system
three ways (two closed forms and exhaustive search) and shows an instance
where the certificate is not unique.
"""

from blindalign import (
    brute_force_solve,
    closed_form_solution,
    closed_form_solution_3user,
    verify_solution,
)

s = (3, 3, 5)  # N=11, e.g. offsets (0, 3, 6)
print(f"Gap profile s={s}, N={sum(s)}; feasibility: {sum(s)} <= 4*{min(s)}\n")

lam_a = closed_form_solution(s)
lam_b = closed_form_solution_3user(s)
print(f"general closed form:  {lam_a}")
print(f"3-user closed form:   {lam_b}")
print(f"both verify: {verify_solution(s, lam_a)} {verify_solution(s, lam_b)}, "
      f"both sum to N: {sum(lam_a)} {sum(lam_b)}\n")

solutions = brute_force_solve(s, enumerate_all=True)
print(f"exhaustive search finds {len(solutions)} certificates:")
for lam in solutions:
    print(f"  {lam}  (lambda_2 = {lam[2]})")
print("certificates are not unique: lambda_2 takes values",
      sorted({lam[2] for lam in solutions}), "\n")

print("window sums of the general closed form (every width-4 cyclic window")
print("must reproduce the extended gap sequence):")
m = 12
ext = [s[i % 3] for i in range(m)]
sums = [sum(lam_a[(i - d) % m] for d in range(4)) for i in range(m)]
print(f"  target:  {ext}")
print(f"  windows: {sums}")

print("\nAn infeasible profile has no certificate at all:")
bad = (3, 3, 7)
print(f"  s={bad}: sum {sum(bad)} > 4*min {4 * min(bad)}; "
      f"exhaustive search returns {brute_force_solve(bad, enumerate_all=True)}")

print("\nLarger K uses the same machinery (K=5 here):")
s5 = (4, 4, 5, 5, 6)
lam5 = closed_form_solution(s5)
print(f"  s={s5}: certificate verifies: {verify_solution(s5, lam5)}")
