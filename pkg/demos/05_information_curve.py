"""Mutual information between the two outcomes as a function of x = a.b.

I(x) runs from 1 bit at perfect (anti-)alignment down to 0 at orthogonality,
and I + H(second | first) = 1 bit everywhere: whatever the first outcome
fails to tell you about the second is exactly the remaining entropy.
"""

from eprbell import info_curve


def main():
    points = info_curve(0.1)
    width = 50
    print("x = a.b   mutual information (bits)")
    for p in points:
        bar = "#" * round(width * p.mutual_information_bits)
        print(f"{p.x:+.1f}     {p.mutual_information_bits:.4f} {bar}")

    print("\nChain identity I + H(second|first) = 1 bit:")
    for p in points[::5]:
        total = p.mutual_information_bits + p.conditional_entropy_bits
        print(f"  x = {p.x:+.1f}: {p.mutual_information_bits:.4f} + "
              f"{p.conditional_entropy_bits:.4f} = {total:.12f}")


if __name__ == "__main__":
    main()
