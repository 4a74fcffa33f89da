"""Verify every registered closed-form moment formula against brute-force
sums at small primes, printing one line per oracle.

Run: python3 demos/01_verify_closed_forms.py
"""

from ecmoments.oracles import oracle_names, REGISTRY, verify_oracle
from ecmoments.ffield import primes_from


def main():
    one_param_primes = [p for p in primes_from(5, 20) if p <= 61]
    two_param_primes = [p for p in one_param_primes if p <= 31]
    for name in oracle_names():
        oracle = REGISTRY[name]
        primes = two_param_primes if name.startswith(("T2", "BIRCH")) else one_param_primes
        report = verify_oracle(name, primes)
        status = "exact" if report.all_equal else "MISMATCH"
        print(f"{name:<10} {oracle.family:<6} order {oracle.order}  "
              f"{len(report.rows):>2} primes  {status}   [{oracle.source}]")


if __name__ == "__main__":
    main()
