import csv
import io
import json
from pathlib import Path

from click.testing import CliRunner

from adlvkit import field
from adlvkit.building import C0, parse_alcove
from adlvkit.cli import main

FIXTURE = Path(__file__).parent / "fixtures" / "table1.csv"


def run(*args):
    return CliRunner().invoke(main, [str(a) for a in args])


def test_enumerate_identity_text():
    r = run("enumerate", "--b", "identity", "--q", 2, "--n", 1, "--R", 3)
    assert r.exit_code == 0
    lines = r.output.splitlines()
    assert lines[0].startswith("identity")
    sizes = {int(l.split()[0][2:]): int(l.split()[1][5:]) for l in lines[1:]}
    assert set(sizes) == set(range(-3, 4))
    assert sizes[0] > 0
    assert all(sizes[w] == 0 for w in (-2, 2))


def test_enumerate_supersingular_json():
    r = run("enumerate", "--b", "supersingular", "--q", 2, "--n", 1, "--R", 2, "--format", "json", "--members")
    assert r.exit_code == 0
    doc = json.loads(r.output)
    assert doc["buckets"]["0"] == 1
    ctx = field(2)
    assert [parse_alcove(s, ctx) for s in doc["members"]["0"]] == [C0]
    for w, members in doc["members"].items():
        assert len(members) == doc["buckets"][w]
        assert all(str(parse_alcove(s, ctx)) == s for s in members)


def test_enumerate_csv_and_dot():
    r = run("enumerate", "--b", "diagonal", "--alpha", 2, "--R", 2, "--format", "csv")
    assert r.exit_code == 0
    rows = list(csv.reader(io.StringIO(r.output)))
    assert rows[0] == ["index", "size", "nonempty"]
    assert len(rows) == 6
    r = run("enumerate", "--b", "supersingular", "--R", 1, "--format", "dot")
    assert r.exit_code == 0 and r.output.startswith("graph") and "color=red" in r.output


def test_enumerate_deterministic():
    args = ("enumerate", "--b", "diagonal", "--alpha", 1, "--q", 3, "--n", 2, "--R", 3, "--format", "json", "--members")
    assert run(*args).output == run(*args).output


def test_config_errors():
    assert run("enumerate", "--q", 6).exit_code == 2
    assert run("enumerate", "--R", 9).exit_code == 2
    assert run("enumerate", "--b", "diagonal", "--alpha", 0).exit_code == 2
    r = run("enumerate", "--R", 4, "--precision", 5)
    assert r.exit_code == 2 and "precision" in r.output
    assert run("enumerate", "--R", 2, "--precision", 10).exit_code == 0
    assert run("verify", "--suite", "finrep", "--q", 7).exit_code == 2


def test_verify_finrep_q5():
    r = run("verify", "--suite", "finrep", "--q", 5)
    assert r.exit_code == 0
    assert "0 failed" in r.output


def test_verify_json():
    r = run("verify", "--suite", "counting", "--format", "json", "--seed", 4)
    assert r.exit_code == 0
    doc = json.loads(r.output)
    assert doc["failed"] == 0 and doc["seed"] == 4


def test_verify_inject_fault():
    r = run("verify", "--suite", "adlv", "--q", 2, "--n", 2, "--R", 4, "--inject-fault")
    assert r.exit_code == 1
    assert "FAIL" in r.output
    r = run("verify", "--suite", "adlv", "--q", 2, "--n", 2, "--R", 4)
    assert r.exit_code == 0


def test_table_matches_fixture():
    r = run("table")
    assert r.exit_code == 0
    assert r.output == FIXTURE.read_text()


def test_table_json():
    r = run("table", "--format", "json")
    rows = json.loads(r.output)
    assert [x["b"] for x in rows] == ["1", "diag(1, t^alpha), alpha > 0", "b_1"]
