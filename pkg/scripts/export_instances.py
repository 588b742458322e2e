"""Write every built-in instance to data/<name>.json."""

import argparse
from pathlib import Path

from tropmech.instances import ALL
from tropmech.io import InputDocument, dump_document


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "data"))
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for inst in ALL:
        doc = InputDocument(dict(inst.spaces), dict(inst.outcomes))
        path = out / f"{inst.name}.json"
        path.write_text(dump_document(doc) + "\n")
        print(path)


if __name__ == "__main__":
    main()
