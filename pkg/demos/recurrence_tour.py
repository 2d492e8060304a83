"""Side by side: a point that returns like clockwork and one that never
comes back.

The binary odometer returns to every depth cell along the multiples of
2^d, so each recurrence analyzer signs off with a small certificate.
The shift orbit of a single marked cell visits the marker cylinder once
and never again; the same analyzers all fail, and their certificates
show exactly where the returns ran out.

Run:  python3 demos/recurrence_tour.py
"""

from zerodim.analysis import (ap_verdict, regular_ap_verdict, return_times,
                              type1_verdict, type2_verdict)
from zerodim.flows import get_system


def banner(text: str) -> None:
    print()
    print(text)
    print("=" * len(text))


def main() -> None:
    odometer = get_system("odometer")
    zero = odometer.point("zero")
    banner("odometer, depth-3 cell around the zero point")
    print("return times in [-20, 20]:",
          return_times(odometer, zero, 3, -20, 20))
    for verdict in (ap_verdict(odometer, zero, horizon=16, depth=3),
                    regular_ap_verdict(odometer, zero, horizon=16, depth=3),
                    type1_verdict(odometer, zero, horizon=16, depth=3),
                    type2_verdict(odometer, zero, horizon=16, depth=3)):
        print(verdict.render())

    shift = get_system("full-shift")
    spike = shift.family("single", 0)
    banner("full shift, one marked cell at the origin")
    print("return times in [-60, 60]:",
          return_times(shift, spike, 1, -60, 60))
    for verdict in (ap_verdict(shift, spike, horizon=40, depth=1),
                    type1_verdict(shift, spike, horizon=40, depth=1),
                    type2_verdict(shift, spike, horizon=40, depth=1)):
        print(verdict.render())
    print()
    print("Every gap in the marker orbit is permanent: the failing")
    print("certificates name an empty return window, both missing")
    print("directions, and the cone element with no return after it.")


if __name__ == "__main__":
    main()
