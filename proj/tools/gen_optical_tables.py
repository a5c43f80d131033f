#!/usr/bin/env python3
"""Generate the synthetic optical tables shipped in data/.

Both tables are model permittivities sampled on a log grid, written in the
table format read by casimir-neq (photon energy in eV, Re eps, Im eps).
They stand in for measured optical data, which is not redistributed here.

    python3 tools/gen_optical_tables.py [outdir]
"""

import sys
from pathlib import Path

import numpy as np

HBAR = 1.054571817e-34
EV = 1.602176634e-19
EV_TO_RAD_S = EV / HBAR

OMEGA_MIN = 1e10  # rad/s
OMEGA_MAX = 1e18
ROWS = 400


def lorentz(omega, strength, omega0, damping):
    return strength * omega0**2 / (omega0**2 - omega**2 - 1j * damping * omega)


def drude(omega, wp, gamma):
    return -(wp**2) / (omega * (omega + 1j * gamma))


def silicon(omega):
    # One interband oscillator (static eps = 11.7) and a weak free-carrier term.
    w0 = 6.6e15
    eps = 1.0 + lorentz(omega, 10.7, w0, 0.05 * w0)
    eps += drude(omega, SI_WP, SI_GAMMA)
    return eps


def gold(omega):
    eps = 1.0 + drude(omega, AU_WP, AU_GAMMA)
    eps += lorentz(omega, 1.2, 2.6 * EV_TO_RAD_S, 0.6 * EV_TO_RAD_S)
    eps += lorentz(omega, 2.5, 4.0 * EV_TO_RAD_S, 1.5 * EV_TO_RAD_S)
    return eps


SI_WP = 1.1e11
SI_GAMMA = 4.8e12
AU_WP = 8.9 * EV_TO_RAD_S
AU_GAMMA = 0.035 * EV_TO_RAD_S


def write_table(path, model, wp, gamma, provenance):
    omega = np.geomspace(OMEGA_MIN, OMEGA_MAX, ROWS)
    eps = model(omega)
    with open(path, "w", encoding="utf-8") as out:
        out.write("# generated by tools/gen_optical_tables.py\n")
        out.write("units: eV\n")
        out.write("format: eps\n")
        out.write(f"provenance: {provenance}\n")
        out.write(f"drude_plasma_eV: {wp / EV_TO_RAD_S:.10g}\n")
        out.write(f"drude_gamma_eV: {gamma / EV_TO_RAD_S:.10g}\n")
        out.write("# energy_eV  eps_real  eps_imag\n")
        for w, e in zip(omega, eps):
            out.write(f"{w / EV_TO_RAD_S:.10e} {e.real:.10e} {max(e.imag, 0.0):.10e}\n")


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "data"
    outdir.mkdir(parents=True, exist_ok=True)
    write_table(outdir / "si_synthetic.txt", silicon, SI_WP, SI_GAMMA,
                "synthetic Si: Lorentz oscillator (eps0 11.7) plus free carriers")
    write_table(outdir / "au_synthetic.txt", gold, AU_WP, AU_GAMMA,
                "synthetic Au: Drude 8.9/0.035 eV plus two interband oscillators")


if __name__ == "__main__":
    main()
