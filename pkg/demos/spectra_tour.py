"""Principal curvatures of one point on each family.

Prints the clustered spectrum of the finite-difference shape operator next
to the closed-form values.  For GraphSH the closed form is shown with both
sign conventions; for the complex and quaternionic MTF families the
measured spectrum has five clusters, not three.

Run with ``python3 demos/spectra_tour.py``.
"""
import numpy as np

from isogeo.catalog import MT, MTF, GraphSH, MHat, spectrum_mismatch, spectrum_xy


def fmt(clusters):
    return ", ".join(f"{v + 0.0:+.6f} x{k}" for v, k in clusters)


def main():
    rng = np.random.default_rng(0)
    for fam in (MT(3, 0.2), MHat.generate(2, 4, 0.4), GraphSH(3, 1.0, t=0.3), MTF("R", 2, 0.3),
                MTF("C", 2, 0.3)):
        x, y = fam.sample_level(rng)
        rep = spectrum_xy(fam, x, y)
        print(fam.label())
        print("  measured:", fmt(rep.clusters))
        print("  stated:  ", fmt(fam.stated_spectrum(x, y)))
        derived = fam.derived_spectrum(x, y)
        if spectrum_mismatch(derived, fam.stated_spectrum(x, y)) != (0.0, True):
            print("  derived: ", fmt(derived))


if __name__ == "__main__":
    main()
