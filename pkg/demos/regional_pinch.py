"""Two sheets that approach each other without ever touching.

Both word-group systems carry a distinguished pair of points at
distance 1: the two copies of a base sequence, or a marked and an
unmarked one.  No single group element brings the pair close, yet a
chain of witnesses approaching the pair gets pushed together to within
2^-j by the j-th move.  The proximal analyzer fails while the regional
check holds, and the two certificates together show the gap between
the two notions.

Run:  python3 demos/regional_pinch.py
"""

from zerodim.analysis import (proximal_verdict, regional_proximal_check,
                              standard_rp_witness)
from zerodim.flows import build_mcmahon, build_two_copy


def pinch(system, depth: int) -> None:
    print()
    print(system.describe())
    witness = standard_rp_witness(system, depth)
    print("  pair:", system.format_point(witness.x), "vs",
          system.format_point(witness.y))
    near = proximal_verdict(system, witness.x, witness.y, horizon=2,
                            depth=depth)
    print(" ", near.render())
    regional = regional_proximal_check(system, witness, depth=depth)
    print(" ", regional.render())
    rows = zip(regional.certificate["approach_x"],
               regional.certificate["pushed_together"])
    for j, (dx, pushed) in enumerate(rows, start=1):
        print("   step %d: witness within %s of the pair, "
              "images within %s" % (j, dx, pushed))


def main() -> None:
    for system in (build_two_copy(6), build_mcmahon(6)):
        pinch(system, 4)


if __name__ == "__main__":
    main()
