import json

import pytest

from strongembed import cli, fixtures as F, io
from strongembed.neartri import from_triangulation, octahedron


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return _write


def scheme_file(write, name):
    return write(f"{name}.emb", io.format_scheme(getattr(F, name)()))


# --- format ---------------------------------------------------------------------


@pytest.mark.parametrize("name", ["petersen", "k33_toroidal", "k6_projective", "theta", "digon_projective"])
def test_round_trip(name):
    s = getattr(F, name)()
    assert io.parse(io.format_scheme(s)).scheme() == s


def test_comments_and_blank_lines():
    text = "# triangle\n\ne 0 0 1\ne 1 1 2  # trailing\ne 2 2 0\n"
    doc = io.parse(text)
    assert len(doc.graph.edges) == 3 and doc.rotation is None


@pytest.mark.parametrize("text,line", [
    ("e 0 0 1\ne 0 1 2\n", 2),
    ("e 0 0 0\n", 1),
    ("e 0 0 x\n", 1),
    ("e 0 0 1\nfoo\n", 2),
    ("e 0 0 1\ne 1 0 1\nv 0 : 0 1\nv 1 : 0\n", 4),
    ("e 0 0 1\nsig 3 -1\n", 2),
    ("e 0 0 1\nsig 0 2\n", 2),
    ("e 0 0 1\nv 0 0 1\n", 2),
])
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(io.FormatError) as info:
        io.parse(text)
    assert info.value.line == line


def test_missing_rotation_line():
    with pytest.raises(io.FormatError, match="no rotation"):
        io.parse("e 0 0 1\ne 1 0 1\nv 0 : 0 1\n")


def test_empty_input():
    with pytest.raises(io.FormatError):
        io.parse("# nothing\n")


def test_outer_line():
    h = from_triangulation(octahedron(), 0)
    doc = io.parse(io.format_scheme(h.scheme(), outer=h.outer))
    assert doc.outer == h.outer


# --- command line ------------------------------------------------------------------


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_faces(capsys, write):
    code, out, _ = run(capsys, "faces", scheme_file(write, "petersen"))
    assert code == 0 and len(out.strip().splitlines()) == 7
    code, out, _ = run(capsys, "faces", scheme_file(write, "petersen"), "--json")
    assert json.loads(out)["surface"]["euler_characteristic"] == 1


def test_rep(capsys, write):
    code, out, _ = run(capsys, "rep", scheme_file(write, "petersen"))
    assert code == 0 and out.splitlines()[0] == "3"
    code, _, err = run(capsys, "rep", scheme_file(write, "k4"))
    assert code == 2 and "sphere" in err


def test_verify_exit_codes(capsys, write):
    assert run(capsys, "verify", scheme_file(write, "petersen"), "--closed2cell")[0] == 0
    assert run(capsys, "verify", scheme_file(write, "petersen"), "--orientable")[0] == 2
    assert run(capsys, "verify", scheme_file(write, "k33_toroidal"), "--orientable", "--closed2cell")[0] == 0
    assert run(capsys, "verify", write("bad.emb", "e 0 1\n"))[0] == 1
    assert run(capsys, "verify", "/nonexistent/file.emb")[0] == 1


def test_rings(capsys, write):
    code, out, _ = run(capsys, "rings", scheme_file(write, "petersen"), "--odd", "--noncontractible")
    assert code == 0
    first = out.splitlines()[0].split("|")[0].split()
    assert len(first) == 3
    assert run(capsys, "rings", scheme_file(write, "cube"), "--noncontractible")[0] == 2


def test_orient(capsys, write):
    code, out, _ = run(capsys, "orient", scheme_file(write, "petersen"))
    assert code == 0
    s = io.parse(out).scheme()
    from strongembed.embedding import euler_characteristic, is_orientable
    assert is_orientable(s) and euler_characteristic(s) == 0
    code, _, _ = run(capsys, "orient", scheme_file(write, "petersen"), "--ring", "0,1,4")
    assert code == 0
    assert run(capsys, "orient", scheme_file(write, "petersen"), "--ring", "0,x")[0] == 1
    assert run(capsys, "orient", scheme_file(write, "petersen"), "--ring", "0,1")[0] == 2


def test_reduce(capsys, write):
    code, out, _ = run(capsys, "reduce", scheme_file(write, "petersen_three_cut"), "--trace")
    assert code == 0 and "ThreeEdgeCut" in out and out.strip().endswith("verification: pass")


def test_ocze_json_deterministic(capsys, write):
    path = scheme_file(write, "petersen_two_cut")
    _, a, _ = run(capsys, "ocze", path, "--json", "--trace")
    _, b, _ = run(capsys, "ocze", path, "--json", "--trace")
    assert a == b
    doc = json.loads(a)
    assert doc["verification"]["ok"] and doc["surface"]["orientable"]


def test_ocze_text_output_parses(capsys, write):
    code, out, _ = run(capsys, "ocze", scheme_file(write, "k33_projective"))
    assert code == 0
    from strongembed.embedding import is_orientable
    assert is_orientable(io.parse(out).scheme())
    assert run(capsys, "ocze", scheme_file(write, "k5_projective"))[0] == 2


def test_ocdc(capsys, write):
    code, out, _ = run(capsys, "ocdc", scheme_file(write, "k5_projective"), "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["arcs"] == 2 * doc["edges"] == 20


def test_neartri(capsys, write):
    h = from_triangulation(octahedron(), 0)
    path = write("w4.emb", io.format_scheme(h.scheme(), outer=h.outer))
    code, out, _ = run(capsys, "neartri", "--check", path)
    assert code == 0 and "uniform_parity_with_deg4_witness" in out
    code, out, _ = run(capsys, "neartri", "--sweep", "8")
    assert code == 0 and "counterexamples: 0" in out
    no_outer = write("k4.emb", io.format_scheme(F.k4()))
    assert run(capsys, "neartri", "--check", no_outer)[0] == 1
