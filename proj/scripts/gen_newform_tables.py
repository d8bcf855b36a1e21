#!/usr/bin/env python3
"""Generate the shipped newform coefficient tables from eta quotients.

The three weight-3 newforms with rational coefficients used by the case
registry all have classical eta-quotient expressions:

    f8  = eta(t)^2 eta(2t) eta(4t) eta(8t)^2   (level 8)
    f12 = eta(2t)^3 eta(6t)^3                  (level 12)
    f16 = eta(4t)^6                            (level 16)

Tables are validated downstream (multiplicativity, Hecke recursion at the
Deligne bound, Fricke functional equation) before use.
"""

import sys

N_COEFFS = 600


def eta_power(scale, power, order):
    """q-expansion of (q^{1/24}-free part of) eta(scale*tau)^power, i.e.
    prod (1-q^{scale*n})^power, as a coefficient list up to `order`."""
    series = [0] * (order + 1)
    series[0] = 1
    for n in range(1, order // scale + 1):
        # multiply by (1 - q^{scale n})^power via repeated single factors
        for _ in range(power):
            step = scale * n
            for i in range(order, step - 1, -1):
                series[i] -= series[i - step]
    return series


def eta_quotient(factors, order):
    """factors: list of (scale, power). Returns (leading exponent, coeffs)."""
    lead_num = sum(s * p for s, p in factors)
    assert lead_num % 24 == 0, "leading exponent must be integral"
    lead = lead_num // 24
    series = [0] * (order + 1)
    series[0] = 1
    for scale, power in factors:
        assert power > 0
        part = eta_power(scale, power, order)
        series = [
            sum(series[j] * part[i - j] for j in range(i + 1)) for i in range(order + 1)
        ]
    return lead, series


def emit(label, level, weight, factors, path):
    order = N_COEFFS
    lead, series = eta_quotient(factors, order - 1)
    assert lead == 1, f"{label}: expected leading exponent q^1"
    coeffs = series[: order - lead + 1]
    with open(path, "w") as f:
        f.write(f"# modmahler newform table: {label} (eta quotient {factors})\n")
        f.write(f"{label} {level} {weight}\n")
        for i in range(0, len(coeffs), 10):
            f.write(" ".join(str(c) for c in coeffs[i : i + 10]) + "\n")
    print(f"{label}: a1..a12 = {coeffs[:12]}")


def main(outdir):
    emit("f8", 8, 3, [(1, 2), (2, 1), (4, 1), (8, 2)], f"{outdir}/f8.txt")
    emit("f12", 12, 3, [(2, 3), (6, 3)], f"{outdir}/f12.txt")
    emit("f16", 16, 3, [(4, 6)], f"{outdir}/f16.txt")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "core/data/newforms")
