"""First-moment rank estimates for the builtin one-parameter families.

R(x) = (1/x) * sum_{p <= x} (-S_1(p)/p) log p converges to the family rank
for rational elliptic surfaces; compare the estimate with each family's
declared rank.

Run: python3 demos/03_rank_estimates.py [n_primes]
"""

import sys

from ecmoments.analysis import rank_estimate
from ecmoments.family import OneParamFamily, builtin_names, get_family
from ecmoments.ffield import primes_from


def main(n: int = 100):
    primes = primes_from(5, n)
    print(f"{'family':<8} {'declared':>8} {'estimate':>9}  surface")
    for name in builtin_names():
        fam = get_family(name)
        if not isinstance(fam, OneParamFamily):
            continue
        est = rank_estimate(fam, primes)
        declared = "-" if fam.declared_rank is None else fam.declared_rank
        flag = "rational" if est.rational_surface else "NOT rational"
        print(f"{name:<8} {declared!s:>8} {est.estimate:>9.3f}  {flag}")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 100)
