"""Structured stabilizer search beyond the desk-scale acceptance cases.

For each (p, n) builds f from the smallest primitive polynomial and the
default b, c, and reports |G| and how many block candidates survive the
conjugation and fixed-vector filters.

    python scripts/survey.py 2:3 2:4 2:5 3:3 5:3
"""

import argparse
import time

from central_aut.construction import build_f_matrix, check_f_properties, report_passed
from central_aut.gf import PrimeField
from central_aut.stabilizer import stabilizer_structured


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("cases", nargs="*", default=["2:3", "2:4", "3:3", "5:3"])
    args = ap.parse_args()
    print(f"{'p':>3} {'n':>3} {'poly':<24} {'candidates':>12} {'filtered':>9} {'|G|':>4} {'lemmas':>7} {'secs':>7}")
    for case in args.cases:
        p, n = map(int, case.split(":"))
        f = build_f_matrix(PrimeField(p), n)
        t0 = time.perf_counter()
        res = stabilizer_structured(f)
        secs = time.perf_counter() - t0
        lemmas = "ok" if report_passed(check_f_properties(f)) else "FAIL"
        print(f"{p:>3} {n:>3} {str(f.m):<24} {res.space_size:>12} {res.tested:>9} {len(res.elements):>4} {lemmas:>7} {secs:>7.2f}")


if __name__ == "__main__":
    main()
