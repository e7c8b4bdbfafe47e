"""Bell and CHSH inequalities: local bounds, quantum violations, and a scan.

The singlet covariance is -cos(theta). Plugging it into the Bell and CHSH
expressions exceeds the local bounds (1 and 2) up to sqrt(2) and 2*sqrt(2);
a grid scan shows the violating region has positive measure.
"""

import math

from eprbell import (
    CovarianceQuad,
    CovarianceTriple,
    bell_1964,
    chsh,
    chsh_to_bell_reduction,
    qm_bell_lhs,
    violation_scan,
)


def main():
    print("Bell inequality |c_ab - c_ac| - c_bc <= 1 at the optimal angles")
    print("theta_ab = theta_bc = pi/4, theta_ac = pi/2:")
    lhs = qm_bell_lhs(math.pi / 4, math.pi / 2, math.pi / 4)
    print(f"  lhs = {lhs:.12f}  (sqrt(2) = {math.sqrt(2):.12f})")

    triple = CovarianceTriple(
        -math.cos(math.pi / 4), -math.cos(math.pi / 2), -math.cos(math.pi / 4)
    )
    v = bell_1964(triple)
    print(f"  verdict: lhs {v.lhs:.6f} vs bound {v.bound} -> "
          f"{'satisfied' if v.satisfied else 'VIOLATED'}")

    print("\nCHSH at theta_ab = theta_db = theta_dc = pi/4, theta_ac = 3*pi/4:")
    quad = CovarianceQuad(
        -math.cos(math.pi / 4), -math.cos(3 * math.pi / 4),
        -math.cos(math.pi / 4), -math.cos(math.pi / 4),
    )
    v = chsh(quad)
    print(f"  lhs = {v.lhs:.12f}  (2*sqrt(2) = {2 * math.sqrt(2):.12f}) -> "
          f"{'satisfied' if v.satisfied else 'VIOLATED'}")

    print("\nSetting d = b collapses CHSH onto Bell plus one:")
    chsh_lhs, bell_lhs = chsh_to_bell_reduction(triple)
    print(f"  chsh lhs = {chsh_lhs:.6f} = bell lhs {bell_lhs:.6f} + 1")

    print("\nScanning coplanar orientations at pi/16 resolution:")
    for name in ("bell", "chsh"):
        result = violation_scan(name, math.pi / 16)
        angles = ", ".join(f"{math.degrees(t):.1f} deg" for t in result.argmax_angles)
        print(f"  {name}: max lhs {result.max_lhs:.6f} at ({angles}); "
              f"{len(result.violations)} violating grid points")


if __name__ == "__main__":
    main()
