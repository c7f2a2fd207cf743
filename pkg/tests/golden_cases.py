"""CLI invocations pinned by golden files, and a helper to run them in-process.

Regenerate with ``python tests/golden_cases.py`` after an intended change.
"""
import contextlib
import io
import sys
from pathlib import Path

GOLDEN = Path(__file__).parent / "golden"
INPUTS = GOLDEN / "inputs"


def _inp(name):
    return str(INPUTS / name)


CASES = {
    "inds_A2_R": ["inds", "A2:R"],
    "inds_A3_RR": ["inds", "A3:RR"],
    "torsion_A3_RR_enumerate": ["torsion", "A3:RR", "enumerate"],
    "torsion_A2_R_check_S2": ["torsion", "A2:R", "check", "S=0,1"],
    "torsion_A2_R_check_P1": ["torsion", "A2:R", "check", "S=1,1"],
    "tstruct_validate_s2_width2": ["tstruct", _inp("s2_width2.chain"), "validate"],
    "tstruct_validate_nonsplit": ["tstruct", _inp("nonsplit_width2.chain"), "validate"],
    "tstruct_validate_notclass": ["tstruct", _inp("notclass_a3.chain"), "validate"],
    "tstruct_truncate_hrs": ["tstruct", _inp("hrs.chain"), "truncate", "1:1,1"],
    "tstruct_enumerate_A2_w1": ["tstruct", "A2:R", "enumerate", "1", "1"],
    "tstruct_enumerate_A3_w2": ["tstruct", "A3:RR", "enumerate", "1", "2"],
    "distance_compute_s2_n3": ["distance", _inp("s2_width3.chain"), "compute"],
    "distance_compute_pure_shift": ["distance", _inp("pure_shift.chain"), "compute"],
    "distance_compute_mixed_a3": ["distance", _inp("mixed_a3.chain"), "compute"],
    "distance_audit_s2_n3": ["distance", _inp("s2_width3.chain"), "audit"],
    **{f"distance_construct_split_n{n}": ["distance", "A2:R", "construct", "S=0,1", str(n)] for n in range(1, 6)},
    "distance_construct_nonsplit_n1": ["distance", "A2:R", "construct", "S=1,0;1,1", "1"],
    "distance_construct_nonsplit_n2": ["distance", "A2:R", "construct", "S=1,0;1,1", "2"],
    "paper_audit": ["paper-audit"],
}

# Outputs that depend only on counts and dimension vectors, not on the field.
FIELD_INDEPENDENT = [
    "inds_A2_R",
    "inds_A3_RR",
    "torsion_A3_RR_enumerate",
    "tstruct_enumerate_A2_w1",
    "tstruct_enumerate_A3_w2",
    "distance_construct_split_n3",
    "paper_audit",
]


def run_cli(argv):
    """Run the CLI in-process; returns ``(exit_code, stdout, stderr)``."""
    from tstrx.cli import main

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue(), err.getvalue()


def render(name, extra=()):
    code, out, err = run_cli(CASES[name] + ["--format", "json", *extra])
    assert code == 0, err
    return out


def field_normalized(name, field):
    """JSON report for ``name`` over F_field with the field-bearing quiver labels removed."""
    import json

    rep = json.loads(render(name, ["--field", str(field)]))
    rep["inputs"].pop("quiver", None)
    rep["data"].pop("quiver", None)
    if "chain_file" in rep["data"]:
        rep["data"]["chain_file"] = rep["data"]["chain_file"].split("\n", 1)[1]
    return rep


def regenerate():
    for name in CASES:
        (GOLDEN / f"{name}.json").write_text(render(name), encoding="utf-8")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent.parent / "src"))
    regenerate()
