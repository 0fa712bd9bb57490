#!/usr/bin/env python3
"""Tabulate how large the truncated inverse coefficients get.

The symmetric two-sided inverse of the binomial kernel needs weights up
to 2N at halfwidth N, while the asymmetric half-pair series never goes
above 1.  This prints both columns so the contrast is visible in one
table.
"""
import argparse
import sys

from deconv import growth_table, half_pair_inverse


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-from", type=int, default=5)
    ap.add_argument("--n-to", type=int, default=200)
    ap.add_argument("--n-step", type=int, default=5)
    ap.add_argument("-o", "--output", help="write CSV here instead of stdout")
    args = ap.parse_args(argv)
    if args.n_from < 1 or args.n_step < 1 or args.n_to < args.n_from:
        ap.error("need 1 <= n-from <= n-to and n-step >= 1")

    halfwidths = range(args.n_from, args.n_to + 1, args.n_step)
    lines = ["N,two_sided_max_coefficient,half_pair_max_coefficient"]
    for n, coef in growth_table(halfwidths):
        flat = half_pair_inverse(n).measure.max_abs_weight()
        lines.append(f"{n},{coef},{flat}")

    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
