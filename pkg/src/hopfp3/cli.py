"""Command-line front end: build, verify, report and iso subcommands.

Every command prints (or writes) one JSON document with a top-level
``"schema": 1``.  Exit codes: 0 all checks pass, 1 a verification failed,
2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from . import catalog as cat
from .field import MAX_DEGREE, FieldError, FieldSpec, Scalar, build_extension
from .hopf import HopfError, verify_axioms
from .lie import LieError
from .rewrite import PresentationError, build_table, check_associativity, parse_presentation

SCHEMA = 1
DEFAULT_PRIMES = (2, 3)
LARGE_PRIMES = (5,)
P5_SAMPLES = 10**5


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    p: int
    mode: str = "full"
    seed: int = 0
    samples: int = P5_SAMPLES
    out: str | None = None
    max_ext_degree: int = 12
    allow_large_p: bool = False

    def __post_init__(self):
        if self.p not in DEFAULT_PRIMES and not (self.allow_large_p and self.p in LARGE_PRIMES):
            allowed = DEFAULT_PRIMES + (LARGE_PRIMES if self.allow_large_p else ())
            hint = "" if self.allow_large_p or self.p not in LARGE_PRIMES else " (p = 5 needs --large-p)"
            raise UsageError(f"p = {self.p} outside the supported set {list(allowed)}{hint}")
        if self.mode not in ("full", "sampled"):
            raise UsageError(f"unknown associativity mode {self.mode!r}")
        if not 1 <= self.max_ext_degree <= MAX_DEGREE:
            raise UsageError(f"--max-ext-degree must lie in 1..{MAX_DEGREE}")

    def to_json(self) -> dict:
        # where the output goes is not part of its content
        return {k: v for k, v in asdict(self).items() if k != "out"}


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Scalar):
        return obj.to_json()
    if isinstance(obj, FieldSpec):
        return obj.to_json()
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.ndarray):
        return to_jsonable(obj.tolist())
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    return obj


def dumps(doc: dict) -> str:
    return json.dumps(to_jsonable(doc), sort_keys=True, indent=2) + "\n"


def emit(doc: dict, out: str | None) -> None:
    text = dumps(doc)
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- argument parsing helpers ---------------------------------------------------------------

def parse_scalar(text: str | None, p: int, max_degree: int):
    """An int, or a comma-separated coefficient list (low degree first) for GF(p^k)."""
    if text is None:
        return None
    try:
        parts = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse scalar {text!r}") from None
    if len(parts) == 1:
        return parts[0]
    if len(parts) > max_degree:
        raise UsageError(f"scalar {text!r} needs degree {len(parts)} > --max-ext-degree {max_degree}")
    return Scalar.from_coeffs(build_extension(p, len(parts)), parts)


def catalog_id(args, p: int) -> cat.CatalogId:
    fam = args.type
    if fam not in cat.FAMILIES:
        raise UsageError(f"unknown type {fam!r}; choose from {', '.join(cat.FAMILIES)}")
    kw = {}
    for name in ("alpha", "beta", "lam"):
        v = parse_scalar(getattr(args, name, None), p, args.max_ext_degree)
        if v is not None:
            kw[name] = v
    if fam == "A5":
        kw.setdefault("beta", 0)
    if fam == "C16":
        kw.setdefault("lam", 1)
    try:
        return cat.CatalogId(fam, p, **kw)
    except (cat.CatalogError, FieldError) as e:
        raise UsageError(str(e)) from None


def config_from(args) -> RunConfig:
    return RunConfig(p=args.p, mode=args.mode, seed=args.seed, samples=args.samples, out=args.out,
                     max_ext_degree=args.max_ext_degree, allow_large_p=args.large_p)


# -- commands ---------------------------------------------------------------------------------

def verify_member(cid: cat.CatalogId, cfg: RunConfig) -> dict:
    H = cat.build(cid)
    ax = verify_axioms(H)
    mode = "full" if cfg.mode == "full" else "sampled"
    assoc = check_associativity(H.alg, mode=mode, samples=cfg.samples, seed=cfg.seed)
    idents = cat.identity_suite(cid.p, families=[cid.family]) if cid.spec is None else []
    ok = ax.ok and assoc.ok and all(r["ok"] for r in idents)
    from .hopf import is_cocommutative, primitive_space
    return {"id": cid.to_json(), "label": cid.label(), "dim": H.dim, "hash": H.content_hash(),
            "axioms": ax.to_json(), "associativity": assoc.to_json(), "identities": idents,
            "cocommutative": is_cocommutative(H), "commutative": H.alg.is_commutative(),
            "primitive_dim": primitive_space(H).dim, "ok": ok}


def cmd_verify(args) -> int:
    cfg = config_from(args)
    cid = catalog_id(args, cfg.p)
    row = verify_member(cid, cfg)
    doc = {"schema": SCHEMA, "command": "verify", "config": cfg.to_json(), "result": row, "ok": row["ok"]}
    emit(doc, cfg.out)
    return 0 if row["ok"] else 1


def cmd_build(args) -> int:
    cfg = config_from(args)
    if args.from_file:
        try:
            text = Path(args.from_file).read_text()
        except OSError as e:
            raise UsageError(f"cannot read {args.from_file}: {e}") from None
        try:
            pres = parse_presentation(text, p=cfg.p, name=Path(args.from_file).stem)
        except PresentationError as e:
            raise UsageError(str(e)) from None
        alg = build_table(pres)
        doc = {"schema": SCHEMA, "command": "build", "config": cfg.to_json(), "algebra": alg.to_json(),
               "ok": True}
        if args.primitive:
            from .hopf import build_hopf
            from .lie import _primitive_delta
            H = build_hopf(alg, [_primitive_delta(alg, alg.basis_vec(g)) for g in alg.generators],
                           name=pres.name)
            ax = verify_axioms(H)
            doc["hopf"] = H.to_json()
            doc["axioms"] = ax.to_json()
            doc["ok"] = ax.ok
    else:
        if not args.type:
            raise UsageError("build needs --type or --from-file")
        cid = catalog_id(args, cfg.p)
        H = cat.build(cid)
        doc = {"schema": SCHEMA, "command": "build", "config": cfg.to_json(), "id": cid.to_json(),
               "hopf": H.to_json(), "ok": True}
    emit(doc, cfg.out)
    return 0 if doc["ok"] else 1


def build_report(cfg: RunConfig) -> dict:
    """The full invariant report at one prime; deterministic for a fixed config."""
    p = cfg.p
    rows = []
    for fam in cat.FAMILIES:
        if not cat.applicable(fam, p):
            rows.append({"family": fam, "p": p, "applicable": False,
                         "reason": "requires p > 2"})
            continue
        ids = [cid for cid in cat.catalog_ids(p) if cid.family == fam]
        for cid in ids:
            row = cat.member_row(cid)
            row["applicable"] = True
            rows.append(row)
    members_ok = all(r["axioms"]["ok"] for r in rows if r.get("applicable"))
    idents = cat.identity_suite(p)
    dist = cat.distinguishing_report(p)
    lie = cat.lie_classification_checks(p)
    graded = cat.graded_A_report(p)
    incl = cat.inclusion_checks(p)
    iso = {"A": {}, "H": cat.resolve_iso_H(p, 1, 0)}
    iso["A"]["beta_1_to_0"] = cat.find_iso_A(p, 1, 0)
    if p == 3:
        from .field import root_of_unity
        spec, g = root_of_unity(p, p * p + p - 1)
        iso["A"]["beta_gamma_to_1"] = cat.find_iso_A(p, g, 1)
        iso["A"]["reject_beta_2_to_1_gamma_1"] = cat.iso_map_A(p, 2, 1, 1, 0, 0)
    h2 = {r["label"]: r.get("h2_dim") for r in rows if r.get("applicable")}
    doc = {"schema": SCHEMA, "command": "report", "config": cfg.to_json(), "p": p,
           "members": rows, "identities": idents, "distinguishing": dist, "lie": lie,
           "graded_A": graded, "inclusions": incl, "h2": h2, "iso": iso,
           "c16_classes": lie["diagonal_classes"],
           "first_orders_of_primitive_subalgebras": cat.primitive_first_orders(p)}
    doc["summary"] = {
        "members_pass_axioms": members_ok,
        "identities_pass": all(r["ok"] for r in idents),
        "distinguishing_checks": dist["checks"],
        "graded_A_ok": graded["ok"],
        "inclusions_ok": all(r["ok"] for r in incl),
        "iso_H_validating_conditions": iso["H"]["validating_conditions"],
        "c16_count": lie["diagonal_classes"]["count"],
        "c16_stated": lie["diagonal_classes"]["stated_count"],
    }
    return doc


def cmd_report(args) -> int:
    cfg = config_from(args)
    doc = build_report(cfg)
    try:
        emit(doc, cfg.out)
    except OSError as e:
        print(f"error: cannot write report: {e}", file=sys.stderr)
        return 1
    s = doc["summary"]
    ok = s["members_pass_axioms"] and s["identities_pass"] and s["graded_A_ok"] and s["inclusions_ok"]
    return 0 if ok else 1


def cmd_iso(args) -> int:
    cfg = config_from(args)
    p, md = cfg.p, cfg.max_ext_degree
    fam = args.family
    if fam == "A":
        beta = parse_scalar(args.beta or "0", p, md)
        beta_p = parse_scalar(args.beta_prime or "0", p, md)
        if args.gamma is not None:
            gamma = parse_scalar(args.gamma, p, md)
            a = parse_scalar(args.a or "0", p, md)
            b = parse_scalar(args.b or "0", p, md)
            res = cat.iso_map_A(p, beta_p, beta, gamma, a, b)
            res = {"found": res["valid"], "witness": {"gamma": res["gamma"], "a": res["a"], "b": res["b"]},
                   "field": res["field"], "result": res}
        else:
            res = cat.find_iso_A(p, beta_p, beta)
        valid = res["found"]
    elif fam == "H":
        alpha = parse_scalar(args.alpha or "0", p, md)
        alpha_p = parse_scalar(args.alpha_prime or "0", p, md)
        if args.a is not None:
            r = cat.iso_map_H(p, alpha_p, alpha, parse_scalar(args.a, p, md))
            res = {"found": r["valid"], "field": r["field"], "result": r}
        else:
            res = cat.resolve_iso_H(p, alpha_p, alpha)
        valid = res["found"]
    else:
        raise UsageError(f"unknown family {fam!r} (choose A or H)")
    doc = {"schema": SCHEMA, "command": "iso", "config": cfg.to_json(), "family": fam, "valid": valid,
           "result": res}
    emit(doc, cfg.out)
    return 0 if valid else 1


# -- parser -------------------------------------------------------------------------------------

def make_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=2, help="characteristic (2 or 3; 5 with --large-p)")
    common.add_argument("--mode", default="full", help="associativity check: full or sampled")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int, default=P5_SAMPLES, help="random triples in sampled mode")
    common.add_argument("--out", default=None, help="write JSON here instead of stdout")
    common.add_argument("--max-ext-degree", type=int, default=12)
    common.add_argument("--large-p", action="store_true", help="allow p = 5")

    params = argparse.ArgumentParser(add_help=False)
    params.add_argument("--type", default=None, help="catalog family, e.g. A5, B2, C16, T210-3")
    params.add_argument("--alpha", default=None)
    params.add_argument("--beta", default=None)
    params.add_argument("--lambda", dest="lam", default=None)

    ap = argparse.ArgumentParser(prog="hopfp3", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    b = sub.add_parser("build", parents=[common, params], help="build a catalog member or a presentation file")
    b.add_argument("--from-file", default=None)
    b.add_argument("--primitive", action="store_true", help="make all generators of --from-file primitive")
    b.set_defaults(func=cmd_build)
    v = sub.add_parser("verify", parents=[common, params], help="verify axioms and identities")
    v.set_defaults(func=cmd_verify)
    r = sub.add_parser("report", parents=[common], help="full invariant report at one prime")
    r.set_defaults(func=cmd_report)
    i = sub.add_parser("iso", parents=[common], help="isomorphisms in the A(beta) and H(alpha) families")
    i.add_argument("--family", required=True)
    for name in ("--beta", "--beta-prime", "--alpha", "--alpha-prime", "--gamma", "--a", "--b"):
        i.add_argument(name, default=None)
    i.set_defaults(func=cmd_iso)
    return ap


def main(argv=None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    if args.command == "verify" and not args.type:
        ap.error("verify needs --type")
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (PresentationError, HopfError, LieError, cat.CatalogError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
