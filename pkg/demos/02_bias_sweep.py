"""Second-moment bias sweep for the rank-0 family y^2 = x^3 - x^2 - x + t.

Subtracts the main term p^2 from each raw second-moment sum, normalizes,
averages over prime groups, and runs the sign test. The closed form for
this family makes the per-prime value exactly -2 - chi(-3), so the mean
settles near -2: a clean instance of the negative bias.

Run: python3 demos/02_bias_sweep.py [n_primes]
"""

import sys

from ecmoments.analysis import bias_series, group_stats
from ecmoments.family import get_family
from ecmoments.ffield import primes_from
from ecmoments.moments import moment_series


def main(n: int = 200):
    fam = get_family("T1R1")
    series = moment_series(fam, primes_from(5, n), (2,))
    report = group_stats(bias_series(series, 2), group_size=10)
    print(f"family {fam.name}: {fam.description}")
    print(f"primes: first {n} (>= 5); normalizer {report.normalizer}")
    print(f"mean bias: {report.mean:+.6f}")
    print(f"groups of 10: {len(report.group_means)}  "
          f"(+{report.n_pos} / -{report.n_neg} / 0:{report.n_zero})")
    print(f"two-sided sign-test tail: {report.sign_test_p:.3g}")
    print("group means:", " ".join(f"{m:+.3f}" for m in report.group_means))


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 200)
