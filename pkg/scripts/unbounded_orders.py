#!/usr/bin/env python3
"""Chase ideal classes of ever larger order down one specialisation family.

For a fixed base divisor the class order is unbounded as n decreases:
the discriminant grows like a fixed power of |n| while principal-form
norms stay polynomially small, so eventually the class group outgrows
every finite exponent.  This script makes that concrete: for each
target k it walks n downward until the class of the maximal order has
order at least k, printing the witness as soon as one appears.

Usage:
    python3 scripts/unbounded_orders.py
    python3 scripts/unbounded_orders.py --targets 10,100,1000 --floor -2000
    python3 scripts/unbounded_orders.py --f -1,1,0,0,0,1 --point 1,1
"""

import argparse
import time

from hyperclass.curve import new_curve
from hyperclass.jacobian import from_point, jac_smul
from hyperclass.polyarith import IntPoly
from hyperclass.quadring import conductor_data
from hyperclass.specialize import find_order_at_least, pairing_value


def parse_ints(text):
    return [int(p) for p in text.split(",")]


def main(argv=None):
    ap = argparse.ArgumentParser(
        description="find n whose specialised class order beats each target")
    ap.add_argument("--f", default="-4,0,0,1",
                    help="coefficients c0,c1,... of the curve polynomial")
    ap.add_argument("--point", default="2,2",
                    help="integral point x,y generating the base divisor")
    ap.add_argument("--mult", type=int, default=1,
                    help="use k times the base point instead")
    ap.add_argument("--targets", default="2,5,10,25,50,100,250,500,1000",
                    help="comma list of order targets to chase in turn")
    ap.add_argument("--floor", type=int, default=-5000,
                    help="give up on a target below this n")
    args = ap.parse_args(argv)

    curve = new_curve(IntPoly(parse_ints(args.f)))
    x, y = parse_ints(args.point)
    Q = jac_smul(curve, args.mult, from_point(curve, x, y))

    print(f"curve: y^2 = {curve.f}, genus {curve.genus}")
    print(f"base divisor: ({Q.a}, {Q.b})")
    print()
    print(f"{'target':>7} {'n':>7} {'f(n)':>16} {'disc_max':>16} "
          f"{'order':>7} {'time':>7}")

    examined = 0
    for k in sorted(set(parse_ints(args.targets))):
        counter = [0]

        def tick(n, order, counter=counter):
            counter[0] += 1

        t0 = time.perf_counter()
        n = find_order_at_least(curve, Q, k, args.floor, progress=tick)
        dt = time.perf_counter() - t0
        examined += counter[0]
        if n is None:
            print(f"{k:>7} {'-':>7} no n >= {args.floor} reaches this "
                  f"order ({dt:.2f}s)")
            break
        fval = curve.f(n)
        cd = conductor_data(fval)
        order = pairing_value(curve, Q, n).order()
        print(f"{k:>7} {n:>7} {fval:>16} {cd.disc_max:>16} "
              f"{order:>7} {dt:>6.2f}s")
    print()
    print(f"{examined} specialisations examined in total")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
