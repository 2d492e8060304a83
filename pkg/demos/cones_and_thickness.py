"""Directional cones in the integer grid, and why they are thick.

Following a sequence marching off in one direction, the reach layers
K(g_n) intersected with a fixed ball settle onto a cone.  On the line
that cone is a half interval; on the grid it is a quarter wedge.  Both
are thick: any finite probe set slides inside them under one shift.

Run:  python3 demos/cones_and_thickness.py
"""

from zerodim.groups import (IntegerGroup, LatticeGroup, affine_sequence,
                            cone_approx, explicit_sequence, is_thick_window,
                            power_set)


def show_line_cone() -> None:
    Z = IntegerGroup()
    approx = cone_approx(Z, affine_sequence(1), radius=12)
    print("line, sequence n, radius 12")
    print("  stabilized:", approx.stabilized,
          "at index", approx.stabilization_index)
    print("  cone:", sorted(approx.elements))
    probe = power_set(Z, 3)
    verdict = is_thick_window(Z, approx, 3, 12)
    print(" ", verdict.render())
    shift = int(verdict.certificate["witness"])
    print("  probe", sorted(probe), "+", shift, "=",
          sorted(f + shift for f in probe))


def show_grid_cone() -> None:
    Z2 = LatticeGroup(2)
    approx = cone_approx(Z2, affine_sequence((1, 0)), radius=8)
    print()
    print("grid, sequence n*(1,0), radius 8")
    print("  stabilized:", approx.stabilized)
    rows = {}
    for (a, b) in approx.elements:
        rows.setdefault(b, []).append(a)
    for b in sorted(rows, reverse=True):
        cells = set(rows[b])
        line = "".join("#" if a in cells else "." for a in range(-8, 9))
        print("   y=%+d  %s" % (b, line))
    verdict = is_thick_window(Z2, approx, 2, 8)
    print(" ", verdict.render())


def show_flipping_sequence() -> None:
    Z = IntegerGroup()
    approx = cone_approx(Z, explicit_sequence([2, -5, 11, -23, 47]),
                         radius=12)
    print()
    print("direction-flipping sequence 2, -5, 11, -23, 47")
    print("  stabilized:", approx.stabilized,
          "(the ball slices keep jumping between the two halves)")


def main() -> None:
    show_line_cone()
    show_grid_cone()
    show_flipping_sequence()


if __name__ == "__main__":
    main()
