import contextlib
import io
import json

import pytest

from spanfactor import GF, QQ, Hyperplane, LinearSubspace, Matrix, sl_subspace
from spanfactor.cli import main
from spanfactor.jsonio import (
    InputFormatError,
    matrix_from_json,
    matrix_to_json,
    subspace_from_json,
    subspace_to_json,
)
from spanfactor.semigroup import trace_level_affine
from spanfactor.subspace import AffineSubspace


def run_cli(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        rc = main(argv)
    return rc, json.loads(buf.getvalue())


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def test_matrix_roundtrip(qq, f5):
    for m in (Matrix(qq, [["1/2", -3, 0], [1, 2, 3], [0, 0, "7/3"]]),
              Matrix(f5, [[1, 2], [3, 4]])):
        assert matrix_from_json(matrix_to_json(m)) == m


def test_subspace_roundtrip(f3):
    h = Hyperplane(Matrix.identity(f3, 3))
    assert subspace_from_json(subspace_to_json(h)) == h
    sl = sl_subspace(f3, 3)
    assert subspace_from_json(subspace_to_json(sl)) == sl
    av = AffineSubspace(Matrix.identity(f3, 3), sl)
    assert subspace_from_json(subspace_to_json(av)) == av


def test_bad_inputs_rejected():
    with pytest.raises(InputFormatError):
        matrix_from_json({"field": {"kind": "prime_field", "p": 4},
                          "rows": 1, "cols": 1, "entries": [["1"]]})
    with pytest.raises(InputFormatError):
        matrix_from_json({"field": {"kind": "rationals"}, "rows": 2, "cols": 2,
                          "entries": [["1", "2"]]})
    with pytest.raises(InputFormatError):
        subspace_from_json({"kind": "mystery"})


def test_factor_pair_cli(tmp_path, qq):
    hpath = write(tmp_path, "h.json", subspace_to_json(Hyperplane(Matrix.identity(qq, 3))))
    mpath = write(tmp_path, "m.json", matrix_to_json(Matrix.identity(qq, 3)))
    rc, out = run_cli(["factor", "--mode", "pair", "--hyperplane", hpath,
                       "--matrix", mpath, "--seed", "0"])
    assert rc == 0 and out["outcome"] == "success"
    b = matrix_from_json(out["artifacts"]["B"])
    c = matrix_from_json(out["artifacts"]["C"])
    assert b * c == Matrix.identity(qq, 3)
    assert b.trace().value == 0 and c.trace().value == 0
    # determinism: identical artifacts on a rerun
    rc2, out2 = run_cli(["factor", "--mode", "pair", "--hyperplane", hpath,
                         "--matrix", mpath, "--seed", "0"])
    assert out2["artifacts"] == out["artifacts"]
    assert out2["inputs_digest"] == out["inputs_digest"]


def test_factor_pair2_cli(tmp_path, f3):
    h1 = write(tmp_path, "h1.json",
               subspace_to_json(Hyperplane(Matrix.elementary(f3, 3, 3, 1, 0))))
    h2 = write(tmp_path, "h2.json",
               subspace_to_json(Hyperplane(Matrix.elementary(f3, 3, 3, 0, 1))))
    mpath = write(tmp_path, "m.json", matrix_to_json(Matrix.identity(f3, 3)))
    rc, out = run_cli(["factor", "--mode", "pair2", "--hyperplane", h1,
                       "--hyperplane2", h2, "--matrix", mpath])
    assert rc == 0 and out["artifacts"]["verified"]


def test_factor_semigroup_cli(tmp_path, f2):
    vpath = write(tmp_path, "v.json", subspace_to_json(trace_level_affine(f2, 3, 0)))
    mpath = write(tmp_path, "m.json",
                  matrix_to_json(Matrix(f2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])))
    rc, out = run_cli(["factor", "--mode", "semigroup", "--affine", vpath,
                       "--matrix", mpath])
    assert rc == 0 and out["artifacts"]["length"] == 2
    factors = [matrix_from_json(f) for f in out["artifacts"]["factors"]]
    acc = Matrix.identity(f2, 3)
    for f in factors:
        acc = acc * f
    assert acc == Matrix(f2, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])


def test_factor_sumprod_cli(tmp_path, f2):
    vpath = write(tmp_path, "v.json",
                  subspace_to_json(Hyperplane(Matrix.elementary(f2, 3, 3, 0, 1))))
    mpath = write(tmp_path, "m.json", matrix_to_json(Matrix.identity(f2, 3)))
    rc, out = run_cli(["factor", "--mode", "sumprod", "--subspace", vpath,
                       "--matrix", mpath])
    assert rc == 0 and out["artifacts"]["verified"]


def test_factor_impossible_n2(tmp_path, f2):
    hpath = write(tmp_path, "h.json",
                  subspace_to_json(Hyperplane(Matrix.elementary(f2, 2, 2, 0, 0))))
    mpath = write(tmp_path, "m.json", matrix_to_json(Matrix(f2, [[0, 1], [1, 0]])))
    rc, out = run_cli(["factor", "--mode", "pair", "--hyperplane", hpath,
                       "--matrix", mpath])
    assert rc == 0 and out["outcome"] == "impossible"
    assert out["artifacts"]["impossible"]


def test_verify_cli_n2class(f2):
    rc, out = run_cli(["verify", "--theorem", "n2class", "--p", "2"])
    assert rc == 0 and out["artifacts"]["passed"]
    assert out["artifacts"]["checked"] == 15


def test_verify_cli_prod2_exhaustive():
    rc, out = run_cli(["verify", "--theorem", "prod2", "--n", "3", "--p", "2",
                       "--samples", "2", "--exhaustive", "--seed", "1"])
    assert rc == 0 and out["artifacts"]["passed"]


def test_verify_cli_lc2_sampled():
    rc, out = run_cli(["verify", "--theorem", "lc2", "--n", "3", "--p", "5",
                       "--samples", "5"])
    assert rc == 0 and out["artifacts"]["passed"]


def test_verify_cli_prodall_sampled():
    rc, out = run_cli(["verify", "--theorem", "prodall", "--n", "3", "--p", "2",
                       "--samples", "3"])
    assert rc == 0 and out["artifacts"]["passed"]


def test_classify2_cli(tmp_path, f2):
    hpath = write(tmp_path, "h0.json",
                  subspace_to_json(Hyperplane(Matrix.elementary(f2, 2, 2, 0, 0))))
    rc, out = run_cli(["classify2", "--hyperplane", hpath])
    assert rc == 0 and out["artifacts"]["verdict"] == "conjugate_H0"
    assert "conjugator" in out["artifacts"]


def test_input_error_exit_code(tmp_path, f2):
    mpath = write(tmp_path, "m.json", matrix_to_json(Matrix.identity(f2, 3)))
    rc, out = run_cli(["factor", "--mode", "pair", "--hyperplane",
                       str(tmp_path / "missing.json"), "--matrix", mpath])
    assert rc == 2 and out["outcome"] == "input_error"
