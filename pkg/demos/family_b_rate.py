"""A two-element uniform rate for the non-increasing binary nets.

The family B of all non-increasing {0,1}-valued nets on a chain window
admits a strikingly small uniform rate: for any sampling eta, the set
{first element, join of its sampled block} witnesses every member at every
tolerance below 1.  This script builds the rate, verifies it across a
sampling suite, and prints the per-member witnesses.
"""

import random

from metastable import build_rate, build_sampling_suite, make_omega_window, verify_rate
from metastable.families import FamilySpec, enumerate_family, rate_B


def main():
    window = make_omega_window(12)
    family = list(enumerate_family(FamilySpec("B", window)))
    print(f"family B on a chain of {len(window)}: {len(family)} members")

    suite = build_sampling_suite(
        window, ["identity", "successor", "doubling", "random-k"], seed=7, random_count=3
    )
    rate = build_rate(suite, lambda t, eta: rate_B(eta, window))

    for sid in sorted(suite):
        candidates = sorted(rate.lookup(0.5, sid))
        report = verify_rate(family, rate, 0.5, sid)
        print(f"  {sid:12s} candidates {candidates} -> overall {report.overall}")
        assert report.overall

    print("every member of B is witnessed by one of at most two indices, per sampling")


if __name__ == "__main__":
    main()
