#!/usr/bin/env python3
"""Run the two showcase discretizations (order 1.5 - 0.4j and 1.5 - 0.2j,
wgc = 1 rad/s) and write full reports under out/demo_mu_<mu>/."""

import sys

from irid import CfoiParams, IridRequest, format_summary, irid_fcoi, write_outputs


def main() -> int:
    for mu in (-0.4, -0.2):
        req = IridRequest(params=CfoiParams(1.5, mu, 1.0), tm=2.0,
                          wmin=0.01, wmax=100.0, norder=5)
        res = irid_fcoi(req)
        paths = write_outputs(res, f"out/demo_mu_{mu:g}")
        print(format_summary(res))
        print(f"  wrote {len(paths)} files under out/demo_mu_{mu:g}\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
