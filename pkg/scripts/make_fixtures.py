"""Write the fixture corpus as embedding files under data/fixtures/."""
import argparse
from pathlib import Path

from strongembed import fixtures, io
from strongembed.neartri import from_triangulation, octahedron


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--out", default=Path(__file__).resolve().parent.parent / "data" / "fixtures", type=Path)
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    schemes = dict(fixtures.corpus())
    schemes.update({
        "k33_toroidal": fixtures.k33_toroidal(),
        "k5_projective": fixtures.k5_projective(),
        "k6_projective": fixtures.k6_projective(),
        "digon_projective": fixtures.digon_projective(),
        "dodecahedron": fixtures.dodecahedron(),
    })
    for name, s in sorted(schemes.items()):
        (args.out / f"{name}.emb").write_text(f"# {name}\n" + io.format_scheme(s))
    w4 = from_triangulation(octahedron(), 0)
    (args.out / "w4_neartri.emb").write_text("# wheel W4 with its rim as outer cycle\n"
                                             + io.format_scheme(w4.scheme(), outer=w4.outer))
    print(f"wrote {len(schemes) + 1} files to {args.out}")


if __name__ == "__main__":
    main()
