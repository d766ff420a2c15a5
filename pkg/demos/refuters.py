"""Adversarial refutation: why some families have no uniform rate.

Two constructions, both replayable as concrete certificates:

* the eventually-zero binary nets (family C) defeat any finite candidate
  set by hiding a spike just above it and sampling across the spike;
* the parity-cutoff nets (family D) all converge to 1, yet no candidate
  set is a uniform *pointed* rate, because the successor sampling of any
  proposed index straddles a 0 of a deeper member.
"""

from metastable import make_omega_window, replay_certificate
from metastable.families import refute_C, refute_D_pointed


def main():
    window = make_omega_window(10)
    s = {0, 1, 2, 3}

    cert = refute_C(s, window, eps=0.5)
    print(f"candidate set {sorted(s)} for family C on a chain of 10")
    print(f"  adversarial member: {cert.member.values}")
    print(f"  sampling on S:      {[sorted(cert.sampling.at(i)) for i in sorted(s)]}")
    print(f"  replay confirms no i in S witnesses [0.5]: {replay_certificate(cert)}")
    assert replay_certificate(cert)

    cert = refute_D_pointed(s, window, eps=0.5)
    print(f"\ncandidate set {sorted(s)} for family D, pointed near target 1")
    print(f"  adversarial member: {cert.member.values}")
    print(f"  replay confirms no i in S is a pointed witness: {replay_certificate(cert)}")
    assert replay_certificate(cert)

    print("\nboth certificates are plain data: serialize them and replay anywhere")


if __name__ == "__main__":
    main()
