"""Draw the worked example's arrangements as SVG files.

Writes the two single-player arrangements and the arrangement of their sum.
"""

import argparse
from pathlib import Path

from tropmech.instances import ARRANGEMENT
from tropmech.mechanism import minkowski_combine
from tropmech.plot import PlotConfig, apexes, arrangement_svg


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="figures")
    parser.add_argument("--no-labels", action="store_true")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    T1, T2 = ARRANGEMENT.spaces["T1"], ARRANGEMENT.spaces["T2"]
    figures = {"T1": T1, "T2": T2, "T1_plus_T2": minkowski_combine([T1, T2])}
    for name, space in figures.items():
        svg = arrangement_svg(space, PlotConfig(labels=not args.no_labels, title=name))
        path = out / f"{name}.svg"
        path.write_text(svg)
        pts = ", ".join(f"({x}, {y})" for x, y in apexes(space))
        print(f"{path}: apexes {pts}")


if __name__ == "__main__":
    main()
