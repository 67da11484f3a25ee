"""Monte Carlo acceptance from sampled trajectories as the sample count grows.

    python scripts/trajectory_convergence.py --n 4 --lam 0.2 --seed 1
"""

import argparse
import math

from phasecode import analytics
from phasecode.codes import symmetric_code
from phasecode.protocol import monte_carlo_accept


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=4)
    parser.add_argument("--lam", type=float, default=0.2)
    parser.add_argument("--seed", type=int, default=1)
    args = parser.parse_args()

    s = 1 / math.sqrt(2)
    exact = analytics.p_accept_form(args.n, args.lam)
    print(f"exact acceptance {exact:.6f}")
    print(f"{'samples':>9} {'estimate':>9} {'stderr':>9} {'z':>6}")
    for m in (10**2, 10**3, 10**4, 10**5, 10**6):
        est = monte_carlo_accept(symmetric_code(args.n), s, s, args.lam, m, args.seed)
        z = (est.p_accept - exact) / est.stderr if est.stderr else float("nan")
        print(f"{m:>9} {est.p_accept:>9.5f} {est.stderr:>9.5f} {z:>6.2f}")


if __name__ == "__main__":
    main()
