"""Independent spreadsheet-style arithmetic for the relaxation rate law.

Cross-checks the library implementation point by point. Everything here
is plain scalar arithmetic on the published high-field fit parameters;
this module must not import the package it checks.

Run as a script to print the reference table.
"""

import math

# SI constants
H = 6.62607015e-34     # J s
KB = 1.380649e-23      # J/K
PI = math.pi

# Published joint-fit parameters (sites 1/3/5, B || [111], 0.1% doping)
R0 = 9.5e-5            # Hz
ALPHA_D = 1.2e-24      # (Hz K T^2)^-1
ALPHA = 3.0e4          # Hz
BETA = 1.3e4           # Hz/T^2
DELTA_CF0 = 8.3e11     # Hz
GAMMA_CF = 8.0e9       # Hz/T^2

# Effective gyromagnetic ratio along [111] for sites 1/3/5 (ground state)
GAMMA = 4.0e8          # Hz/T

# Material parameters for the direct-phonon coefficient estimate
RHO = 4564.0           # kg/m^3
V_L = 8600.0           # m/s
V_T = 5000.0           # m/s

# (B in Tesla, T in Kelvin) reference points
POINTS = [
    (0.0, 1.6),
    (0.0, 4.0),
    (1.0, 1.6),
    (2.0, 2.0),
    (3.0, 1.6),
    (3.0, 4.0),
    (4.0, 2.5),
    (5.0, 3.0),
    (6.0, 1.6),
    (6.0, 4.0),
]


def direct_term(b, t, gamma=GAMMA):
    # alpha_D * gamma^2 * B^4 * T
    gamma_sq = gamma * gamma
    b4 = b * b * b * b
    return ALPHA_D * gamma_sq * b4 * t


def orbach_term(b, t):
    # (alpha + beta B^2) / (exp(h * Delta_CF(B) / (kB T)) - 1)
    coupling = ALPHA + BETA * b * b
    delta_cf = DELTA_CF0 + GAMMA_CF * b * b
    exponent = H * delta_cf / (KB * t)
    return coupling / (math.exp(exponent) - 1.0)


def total_rate(b, t, gamma=GAMMA):
    return R0 + direct_term(b, t, gamma) + orbach_term(b, t)


def bleaney_estimate(gamma=GAMMA, rho=RHO, v_l=V_L, v_t=V_T):
    # 24 pi^2 kB gamma^2 / (rho v^5), v averaged over one longitudinal
    # and two transverse modes
    v = (v_l + 2.0 * v_t) / 3.0
    numerator = 24.0 * PI * PI * KB * gamma * gamma
    denominator = rho * v * v * v * v * v
    return numerator / denominator


def main():
    print("B_T,T_K,residual_Hz,direct_Hz,orbach_Hz,total_Hz")
    for b, t in POINTS:
        d = direct_term(b, t)
        o = orbach_term(b, t)
        print(f"{b},{t},{R0!r},{d!r},{o!r},{R0 + d + o!r}")
    print(f"direct-phonon coefficient estimate: {bleaney_estimate()!r}")


if __name__ == "__main__":
    main()
