"""Physical constants in SI units.

Every routine that uses one of these accepts an override, so tests can
work in natural units (c = 1, q/hbar = 1) without touching globals.
"""

C_LIGHT = 299_792_458.0        # speed of light, m/s
HBAR = 1.054_571_817e-34       # reduced Planck constant, J s
E_CHARGE = 1.602_176_634e-19   # elementary charge, C
