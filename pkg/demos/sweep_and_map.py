"""Sweep the authority-failure and re-framing parameters, then map the
dominant agent type over the plane.

Runs a small 4x4 sweep over (p, F) at reduced scale, writes the
long-format sweep CSV, and — if the dimeplot package is installed —
renders a dominant-type map and a latent-radical contour next to it.

Run with:  python3 demos/sweep_and_map.py [outdir]
"""

import sys
from pathlib import Path

from dimesim.engine import ModelParams, atomic_write_text
from dimesim.experiments import SweepSpec, run_sweep, sweep_csv_text

GRID = [0.1, 0.3, 0.6, 0.9]


def main():
    outdir = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_results")
    outdir.mkdir(parents=True, exist_ok=True)

    spec = SweepSpec(
        axes={"p": GRID, "f": GRID},
        fixed=ModelParams(phi=0.8, r=10, n=300, t=1_500, seed=11),
        replicates=2,
    )
    cells = run_sweep(
        spec,
        on_cell=lambda cell: print(
            f"  p={cell.coordinates['p']:.1f} F={cell.coordinates['f']:.1f}"
            f" -> {cell.dominant_type.abbreviation} {cell.dominant_fraction:.3f}"
        ),
    )
    csv_path = outdir / "sweep.csv"
    atomic_write_text(csv_path, sweep_csv_text(cells))
    print(f"wrote {csv_path}")

    try:
        from dimeplot import plot_contour, plot_dominant_map
    except ImportError:
        print("dimeplot not installed; skipping figures")
        return
    plot_dominant_map(csv_path, outdir / "dominant_map.png")
    plot_contour(csv_path, outdir / "latent_radical_contour.png", "latent_radical")
    print(f"wrote {outdir / 'dominant_map.png'} and "
          f"{outdir / 'latent_radical_contour.png'}")


if __name__ == "__main__":
    main()
