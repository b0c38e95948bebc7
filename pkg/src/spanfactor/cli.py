"""Command-line interface: factor, verify, classify2.

Every emitted factorization was re-verified in process before being
reported.  All randomness flows from --seed, so re-running the echoed
command reproduces the artifacts byte for byte (the timing field is the
one exception).

Exit codes: 0 success, 1 verification failure (counterexample found),
2 input error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field as dc_field
from typing import Dict, List, Optional

from .errors import (
    BudgetExhaustedError,
    PreconditionViolatedError,
    SpanfactorError,
)
from .factor2 import (
    Impossible,
    hyperplane_pair_factor,
    n2_classify,
    n2_pair_factor,
    sum_of_products_decompose,
    two_hyperplanes_factor,
)
from .jsonio import (
    InputFormatError,
    load_json_file,
    matrix_from_json,
    matrix_to_json,
    subspace_from_json,
)
from .matrix import Matrix
from .semigroup import semigroup_factor
from .subspace import AffineSubspace, Hyperplane, LinearSubspace
from .verify import SUITES
from .witness import SearchBudget

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3


@dataclass
class RunReport:
    command: List[str]
    inputs_digest: str
    seed: int
    outcome: str
    artifacts: Dict[str, object] = dc_field(default_factory=dict)
    timing_s: float = 0.0

    def emit(self) -> None:
        print(json.dumps(asdict(self), indent=2, sort_keys=True))


def _digest(*parts: object) -> str:
    h = hashlib.sha256()
    for part in parts:
        h.update(json.dumps(part, sort_keys=True, default=str).encode())
    return h.hexdigest()


def _budget(args) -> SearchBudget:
    return SearchBudget(rng_seed=args.seed, max_random_trials=args.trials,
                        allow_exhaustive=True,
                        exhaustive_ceiling=args.exhaustive_ceiling)


def _load_hyperplane(path: str) -> Hyperplane:
    obj = subspace_from_json(load_json_file(path))
    if isinstance(obj, Hyperplane):
        return obj
    if isinstance(obj, LinearSubspace) and obj.codim == 1:
        from .subspace import ortho_complement
        return Hyperplane(ortho_complement(obj).basis()[0])
    raise InputFormatError(f"{path} does not describe a hyperplane")


def _load_affine(path: str) -> AffineSubspace:
    obj = subspace_from_json(load_json_file(path))
    if isinstance(obj, AffineSubspace):
        return obj
    if isinstance(obj, Hyperplane):
        return obj.as_affine()
    if isinstance(obj, LinearSubspace):
        return AffineSubspace(Matrix.zero(obj.field, obj.shape[0], obj.shape[1]), obj)
    raise InputFormatError(f"{path} does not describe an affine subspace")


def cmd_factor(args) -> int:
    t0 = time.monotonic()
    budget = _budget(args)
    matrix = matrix_from_json(load_json_file(args.matrix))
    artifacts: Dict[str, object] = {}
    inputs = [args.mode, args.seed, matrix_to_json(matrix)]
    if args.mode == "pair":
        h = _load_hyperplane(args.hyperplane)
        inputs.append(matrix_to_json(h.normal))
        if h.n == 2:
            res = n2_pair_factor(h, matrix, budget)
            if isinstance(res, Impossible):
                artifacts = {"impossible": True, "reason": res.reason,
                             "standardized_target": matrix_to_json(res.standardized_target)}
                outcome = "impossible"
            else:
                artifacts = {"B": matrix_to_json(res.left),
                             "C": matrix_to_json(res.right), "verified": True}
                outcome = "success"
        else:
            pf = hyperplane_pair_factor(h, matrix, budget)
            artifacts = {"B": matrix_to_json(pf.left),
                         "C": matrix_to_json(pf.right), "verified": True}
            outcome = "success"
    elif args.mode == "pair2":
        h1 = _load_hyperplane(args.hyperplane)
        h2 = _load_hyperplane(args.hyperplane2)
        inputs += [matrix_to_json(h1.normal), matrix_to_json(h2.normal)]
        pf = two_hyperplanes_factor(h1, h2, matrix, budget)
        artifacts = {"B": matrix_to_json(pf.left), "C": matrix_to_json(pf.right),
                     "verified": True}
        outcome = "success"
    elif args.mode == "semigroup":
        v = _load_affine(args.affine)
        inputs.append(matrix_to_json(v.base))
        cf = semigroup_factor(v, matrix, budget)
        artifacts = {"factors": [matrix_to_json(f) for f in cf.factors],
                     "length": cf.length, "verified": True}
        outcome = "success"
    elif args.mode == "sumprod":
        v = _load_affine(args.subspace).translation if args.subspace else None
        if v is None:
            raise InputFormatError("--subspace is required for mode sumprod")
        s = sum_of_products_decompose(v, matrix)
        artifacts = {"terms": [[matrix_to_json(a), matrix_to_json(c)]
                               for a, c in s.terms], "verified": True}
        outcome = "success"
    else:
        raise InputFormatError(f"unknown mode {args.mode!r}")
    RunReport(sys.argv[1:], _digest(*inputs), args.seed, outcome, artifacts,
              round(time.monotonic() - t0, 6)).emit()
    return EXIT_OK


def cmd_verify(args) -> int:
    t0 = time.monotonic()
    suite = SUITES[args.theorem]
    kwargs = {"seed": args.seed}
    if args.theorem != "n2class":
        kwargs.update(n=args.n, p=args.p, samples=args.samples,
                      exhaustive=args.exhaustive)
    else:
        kwargs.update(p=args.p)
    result = suite(**kwargs)
    artifacts: Dict[str, object] = {
        "theorem": result.theorem, "passed": result.passed,
        "checked": result.checked, "notes": result.notes,
    }
    if result.counterexample is not None:
        artifacts["counterexample"] = result.counterexample
    outcome = "success" if result.passed else "failure"
    RunReport(sys.argv[1:], _digest(args.theorem, args.n, args.p, args.seed),
              args.seed, outcome, artifacts,
              round(time.monotonic() - t0, 6)).emit()
    return EXIT_OK if result.passed else EXIT_VERIFY_FAILED


def cmd_classify2(args) -> int:
    t0 = time.monotonic()
    h = _load_hyperplane(args.hyperplane)
    cls = n2_classify(h)
    artifacts: Dict[str, object] = {"verdict": cls.verdict}
    if cls.conjugator is not None:
        artifacts["conjugator"] = matrix_to_json(cls.conjugator)
    RunReport(sys.argv[1:], _digest(matrix_to_json(h.normal)), args.seed,
              "success", artifacts, round(time.monotonic() - t0, 6)).emit()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spanfactor",
        description="Factor matrices through large subspaces of M_n(K), "
                    "verify the underlying theorems, classify n = 2 hyperplanes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budget_flags(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=200)
        p.add_argument("--exhaustive-ceiling", type=int, default=2_000_000,
                       dest="exhaustive_ceiling")

    f = sub.add_parser("factor", help="factor a matrix through a subspace")
    f.add_argument("--mode", required=True,
                   choices=["pair", "pair2", "semigroup", "sumprod"])
    f.add_argument("--hyperplane", help="hyperplane JSON file")
    f.add_argument("--hyperplane2", help="second hyperplane JSON file (pair2)")
    f.add_argument("--affine", help="affine subspace JSON file (semigroup)")
    f.add_argument("--subspace", help="linear subspace JSON file (sumprod)")
    f.add_argument("--matrix", required=True, help="target matrix JSON file")
    add_budget_flags(f)
    f.set_defaults(func=cmd_factor)

    v = sub.add_parser("verify", help="run a theorem verification suite")
    v.add_argument("--theorem", required=True, choices=sorted(SUITES))
    v.add_argument("--n", type=int, default=3)
    v.add_argument("--p", type=int, default=2)
    v.add_argument("--samples", type=int, default=10)
    v.add_argument("--exhaustive", action="store_true")
    add_budget_flags(v)
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("classify2", help="classify a hyperplane of M_2")
    c.add_argument("--hyperplane", required=True)
    add_budget_flags(c)
    c.set_defaults(func=cmd_classify2)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InputFormatError, PreconditionViolatedError) as exc:
        print(json.dumps({"outcome": "input_error", "error": str(exc)}))
        return EXIT_INPUT_ERROR
    except BudgetExhaustedError as exc:
        print(json.dumps({"outcome": "budget_exhausted", "error": str(exc)}))
        return EXIT_BUDGET
    except SpanfactorError as exc:
        print(json.dumps({"outcome": "error", "error": str(exc)}))
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
