"""Command-line front end: ``pfam <subcommand> [options]``.

Inputs are inline JSON or ``@path`` to a JSON file. Output is JSON (sorted
keys, deterministic) or CSV for sequence-valued results.

Exit codes: 0 success, 1 verdict FAIL, 2 parse error, 3 non-prime p,
4 dimension mismatch, 5 any other error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import family, limits, monomial, multiplicity, regions
from .errors import DimensionMismatch, PfamError
from .jsonio import (
    SEQUENCE_COLUMNS,
    SchemaError,
    csv_rows,
    dumps,
    encode,
    parse_factors,
    parse_family,
    parse_ideal,
    parse_rational,
    parse_region,
    sequence_rows,
)

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRIME, EXIT_DIM, EXIT_OTHER = 0, 1, 2, 3, 4, 5
CAPS = {"dim": 4, "emax": 12, "bmax": 10}

# module operation -> the single subcommand exposing it
COVERAGE = {
    "minimalize": "ideal",
    "combine": "ideal",
    "power": "ideal",
    "is_m_primary": "ideal",
    "integral_closure": "closure",
    "colength": "length",
    "relative_colength": "length",
    "count_below": "count-below",
    "evaluate": "eval",
    "truncate": "truncate",
    "verify_family_axioms": "verify-family",
    "linear_growth_constant": "growth",
    "staircase": "covol",
    "covolume": "covol",
    "pbody": "pbody",
    "minkowski_scale_sum": "minkowski",
    "region_properties": "props",
    "volume_below": "vol-below",
    "hilbert_kunz": "hk",
    "samuel": "mult",
    "mixed_dim2": "mixed",
    "verma_rhs": "verma",
    "dim2_family_rhs": "dim2-rhs",
    "e_vs_ehk_check": "e-vs-ehk",
    "length_sequence": "limits",
    "double_limit_table": "double-limit",
    "basis_search": "basis",
    "fit_homogeneous": "fit",
    "coefficient_limits": "coeff-limits",
}


class ParseError(Exception):
    pass


class PrimeError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


@dataclass
class Job:
    command: str
    p: int = 2
    e_max: int = 4
    b_max: int = 3
    tol: Fraction = limits.DEFAULT_TOL
    fmt: str = "json"
    out: str | None = None
    inputs: dict = field(default_factory=dict)
    options: dict = field(default_factory=dict)


def is_prime(n):
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True


def _load(text):
    if text is None:
        return None
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {text[1:]}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc


# subcommand -> (json inputs, extra options)
SUBCOMMANDS = {
    "ideal": (["ideal", "other"], ["op", "n", "mode"]),
    "closure": (["ideal"], []),
    "length": (["ideal", "J", "K"], ["method"]),
    "count-below": (["ideal", "halfspace"], []),
    "eval": (["family"], ["e"]),
    "truncate": (["family"], ["a"]),
    "verify-family": (["family"], []),
    "growth": (["J", "I"], ["cmax"]),
    "covol": (["ideal", "region"], ["newton"]),
    "pbody": (["family"], ["qmax"]),
    "minkowski": (["parts"], []),
    "props": (["region"], []),
    "vol-below": (["region", "halfspace"], ["q"]),
    "hk": (["ideal"], []),
    "mult": (["ideal"], []),
    "mixed": (["ideal", "other"], []),
    "verma": (["ideals", "rs"], ["inclusive"]),
    "dim2-rhs": (["families", "shifts"], ["inclusive"]),
    "e-vs-ehk": (["family"], []),
    "limits": (["J", "I"], ["base"]),
    "double-limit": (["J", "I"], []),
    "basis": ([], ["s", "d"]),
    "fit": (["samples"], ["d"]),
    "coeff-limits": (["families"], ["d", "elive", "heldout"]),
}

_INT_OPTS = {"n", "e", "a", "cmax", "qmax", "q", "base", "s", "d", "elive"}


def build_parser():
    parser = _Parser(prog="pfam", description="p-families of monomial ideals: lengths, multiplicities, limits")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (inputs, opts) in SUBCOMMANDS.items():
        sp = sub.add_parser(name)
        sp.add_argument("-p", type=int, default=2)
        sp.add_argument("--emax", type=int, default=4)
        sp.add_argument("--bmax", type=int, default=3)
        sp.add_argument("--tol", default="1/32")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--out")
        sp.add_argument("--unsafe-large", action="store_true")
        for key in inputs:
            sp.add_argument(f"--{key}")
        for key in opts:
            if key in ("newton", "inclusive"):
                sp.add_argument(f"--{key}", action="store_true")
            elif key in _INT_OPTS:
                sp.add_argument(f"--{key}", type=int)
            else:
                sp.add_argument(f"--{key}")
    return parser


def parse_inputs(argv):
    """Parse argv into a validated Job (raises ParseError / PrimeError / DimensionMismatch)."""
    args = build_parser().parse_args(argv)
    if not is_prime(args.p):
        raise PrimeError(f"p = {args.p} is not prime")
    inputs, opts = SUBCOMMANDS[args.command]
    try:
        tol = Fraction(args.tol)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad tolerance {args.tol!r}") from exc
    if not args.unsafe_large:
        if args.emax > CAPS["emax"] or args.bmax > CAPS["bmax"]:
            raise ParseError(f"e_max <= {CAPS['emax']} and b_max <= {CAPS['bmax']} unless --unsafe-large")
    if args.emax < 0 or args.bmax < 0:
        raise ParseError("e_max and b_max must be nonnegative")
    job = Job(args.command, args.p, args.emax, args.bmax, tol, args.format, args.out)
    for key in inputs:
        raw = getattr(args, key)
        job.inputs[key] = _load(raw)
    for key in opts:
        job.options[key] = getattr(args, key)
    job.options["unsafe_large"] = args.unsafe_large
    _typecheck(job)
    return job


def _ideal(obj, dim=None):
    return parse_ideal(obj, dim)


def _typecheck(job):
    """Materialize JSON inputs into ideals, families and regions."""
    conv = {}
    raw = job.inputs
    try:
        for key in ("ideal", "other", "J", "K"):
            if raw.get(key) is not None and job.command not in ("growth", "limits", "double-limit"):
                conv[key] = _ideal(raw[key])
        if job.command in ("growth", "limits", "double-limit"):
            conv["J"] = parse_factors(raw.get("J") or [])
            conv["I"] = parse_factors(raw.get("I") or [])
            dims = {f.dim for f, _ in conv["J"] + conv["I"]}
            if len(dims) > 1:
                raise DimensionMismatch("J and I factors live in different dimensions")
            if not conv["I"] and job.command != "growth":
                raise SchemaError("--I needs at least one factor")
        if raw.get("family") is not None:
            conv["family"] = parse_family(raw["family"])
        if raw.get("families") is not None:
            if not isinstance(raw["families"], list) or not raw["families"]:
                raise SchemaError("--families must be a nonempty list")
            conv["families"] = [parse_family(f) for f in raw["families"]]
        if raw.get("ideals") is not None:
            if not isinstance(raw["ideals"], list):
                raise SchemaError("--ideals must be a list")
            conv["ideals"] = [_ideal(x) for x in raw["ideals"]]
        for key in ("rs", "shifts"):
            if raw.get(key) is not None:
                v = raw[key]
                if not isinstance(v, list) or not all(isinstance(x, int) and x >= 0 for x in v):
                    raise SchemaError(f"--{key} must be a list of nonnegative integers")
                conv[key] = v
        if raw.get("region") is not None:
            conv["region"] = parse_region(raw["region"])
        if raw.get("parts") is not None:
            if not isinstance(raw["parts"], list):
                raise SchemaError("--parts must be a list")
            conv["parts"] = [
                (parse_region(x["region"]), parse_rational(x["scale"])) if isinstance(x, dict) and "region" in x
                else _bad_part()
                for x in raw["parts"]
            ]
        if raw.get("halfspace") is not None:
            h = raw["halfspace"]
            if not isinstance(h, dict) or "normal" not in h or "bound" not in h:
                raise SchemaError('halfspace needs "normal" and "bound"')
            conv["halfspace"] = monomial.Halfspace(
                tuple(parse_rational(v) for v in h["normal"]), parse_rational(h["bound"])
            )
        if raw.get("samples") is not None:
            conv["samples"] = [
                (tuple(parse_rational(v) for v in s["point"]), parse_rational(s["value"])) for s in raw["samples"]
            ]
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"malformed input: {exc}") from exc
    if not job.options.get("unsafe_large"):
        dims = [getattr(v, "dim", None) for v in conv.values()]
        dims += [x.dim for k in ("ideals", "families") for x in conv.get(k, [])]
        if any(d is not None and d > CAPS["dim"] for d in dims):
            raise ParseError(f"dimension above {CAPS['dim']} needs --unsafe-large")
    job.inputs = conv


def _bad_part():
    raise SchemaError('each part needs "region" and "scale"')


def _need(job, *keys):
    for k in keys:
        if job.inputs.get(k) is None and job.options.get(k) is None:
            raise SchemaError(f"--{k} is required for {job.command}")


def run(job):
    """Execute a Job; returns (exit code, output text)."""
    handler = _HANDLERS[job.command]
    result, code = handler(job)
    if job.fmt == "csv":
        if not isinstance(result, dict) or "csv" not in result:
            raise SchemaError(f"{job.command} has no CSV output")
        return code, result["csv"]
    if isinstance(result, dict):
        result = {k: v for k, v in result.items() if k != "csv"}
    return code, dumps(result)


def _h_ideal(job):
    _need(job, "ideal")
    I = job.inputs["ideal"]
    op = job.options.get("op") or "minimalize"
    if op == "minimalize":
        return {"ideal": I}, EXIT_OK
    if op == "is_m_primary":
        return {"m_primary": monomial.is_m_primary(I)}, EXIT_OK
    if op == "power":
        n = job.options.get("n")
        if n is None:
            raise SchemaError("--n is required for power")
        mode = job.options.get("mode") or "ordinary"
        return {"ideal": monomial.power(I, n, mode, job.p)}, EXIT_OK
    if op in ("sum", "product", "intersection", "colon"):
        _need(job, "other")
        return {"ideal": monomial.combine(I, job.inputs["other"], op)}, EXIT_OK
    raise SchemaError(f"unknown --op {op!r}")


def _h_closure(job):
    _need(job, "ideal")
    return {"ideal": monomial.integral_closure(job.inputs["ideal"])}, EXIT_OK


def _h_length(job):
    if job.inputs.get("J") is not None or job.inputs.get("K") is not None:
        _need(job, "J", "K")
        method = job.options.get("method") or "auto"
        return {"length": monomial.relative_colength(job.inputs["J"], job.inputs["K"], method)}, EXIT_OK
    _need(job, "ideal")
    return {"length": monomial.colength(job.inputs["ideal"])}, EXIT_OK


def _h_count_below(job):
    _need(job, "ideal", "halfspace")
    return {"count": monomial.count_below(job.inputs["ideal"], job.inputs["halfspace"])}, EXIT_OK


def _h_eval(job):
    _need(job, "family")
    e = job.options.get("e")
    if e is None:
        seq = [{"e": k, "ideal": family.evaluate(job.inputs["family"], k, job.p)} for k in range(job.e_max + 1)]
        return {"ideals": seq}, EXIT_OK
    return {"e": e, "ideal": family.evaluate(job.inputs["family"], e, job.p)}, EXIT_OK


def _h_truncate(job):
    from .jsonio import family_json

    _need(job, "family", "a")
    T = family.truncate(job.inputs["family"], job.options["a"])
    seq = [{"e": k, "ideal": family.evaluate(T, k, job.p)} for k in range(job.e_max + 1)]
    threshold = family.finite_type_threshold(T, max(job.e_max, 1), job.p)
    return {"family": family_json(T), "ideals": seq, "finite_type_threshold": threshold}, EXIT_OK


def _h_verify(job):
    _need(job, "family")
    rep = family.verify_family_axioms(job.inputs["family"], max(job.e_max, 1), job.p)
    code = EXIT_OK if rep.p_family_ok else EXIT_FAIL
    return {"report": rep}, code


def _h_growth(job):
    d = {f.dim for f, _ in job.inputs["J"] + job.inputs["I"]}
    if not job.inputs["I"]:
        raise SchemaError("--I needs at least one factor")
    (dim,) = d
    J = family.ShiftedProduct(tuple(job.inputs["J"]), None, dim)
    IJ = family.ShiftedProduct(tuple(job.inputs["I"] + job.inputs["J"]), None, dim)
    c = family.linear_growth_constant(J, IJ, job.options.get("cmax") or 16, job.e_max, job.p)
    return {"c": c}, EXIT_OK if c is not None else EXIT_FAIL


def _h_covol(job):
    if job.inputs.get("region") is not None:
        R = job.inputs["region"]
    else:
        _need(job, "ideal")
        I = job.inputs["ideal"]
        R = regions.newton_region(I) if job.options.get("newton") else regions.staircase(I)
    return {"region": R, "covolume": regions.covolume(R)}, EXIT_OK


def _h_pbody(job):
    _need(job, "family")
    q_max = job.options.get("qmax") or job.p**job.e_max
    if not monomial.is_power_of(q_max, job.p):
        raise SchemaError(f"--qmax must be a power of p={job.p}")
    R = regions.pbody(job.inputs["family"], q_max, job.p)
    return {"region": R, "covolume": regions.covolume(R)}, EXIT_OK


def _h_minkowski(job):
    _need(job, "parts")
    R = regions.minkowski_scale_sum(job.inputs["parts"])
    return {"region": R, "covolume": regions.covolume(R)}, EXIT_OK


def _h_props(job):
    _need(job, "region")
    return {"properties": regions.region_properties(job.inputs["region"])}, EXIT_OK


def _h_vol_below(job):
    _need(job, "region", "halfspace")
    return {"volume": regions.volume_below(job.inputs["region"], job.inputs["halfspace"], job.options.get("q"))}, EXIT_OK


def _h_hk(job):
    _need(job, "ideal")
    return {"hilbert_kunz": multiplicity.hilbert_kunz(job.inputs["ideal"])}, EXIT_OK


def _h_mult(job):
    _need(job, "ideal")
    return {"samuel": multiplicity.samuel(job.inputs["ideal"])}, EXIT_OK


def _h_mixed(job):
    _need(job, "ideal", "other")
    rep = multiplicity.mixed_dim2(job.inputs["ideal"], job.inputs["other"])
    return {"report": rep, "r_vanishes": rep.r_vanishes}, EXIT_OK


def _h_verma(job):
    _need(job, "ideals", "rs")
    ideals, rs = job.inputs["ideals"], job.inputs["rs"]
    rhs = multiplicity.verma_rhs(ideals, rs, bool(job.options.get("inclusive")))
    lhs = monomial.colength(multiplicity.product_of_powers(ideals, rs))
    return {"rhs": rhs, "length": lhs, "equal": lhs == rhs}, EXIT_OK if lhs == rhs else EXIT_FAIL


def _h_dim2_rhs(job):
    _need(job, "families", "shifts")
    res = multiplicity.dim2_family_rhs(
        job.inputs["families"], job.inputs["shifts"], job.b_max, job.p, bool(job.options.get("inclusive"))
    )
    rows = [{"b": b, "e": "", "q": "", "num": v.numerator, "den": v.denominator, "float": f"{float(v):.12g}"}
            for b, v in enumerate(res.values)]
    return {"rhs": res, "csv": csv_rows(rows, SEQUENCE_COLUMNS)}, EXIT_OK


def _h_e_vs_ehk(job):
    _need(job, "family")
    rep = multiplicity.e_vs_ehk_check(job.inputs["family"], job.e_max, job.p)
    return {"rows": rep.rows, "gaps": rep.gaps}, EXIT_OK


def _h_limits(job):
    base = job.options.get("base")
    seq = limits.length_sequence(job.inputs["J"], job.inputs["I"], base, job.e_max, job.p)
    d = limits._dim_of(job.inputs["J"], job.inputs["I"])
    csv_text = csv_rows(sequence_rows(seq.entries, job.p, d), SEQUENCE_COLUMNS)
    return {"sequence": seq, "csv": csv_text}, EXIT_OK


def _h_double_limit(job):
    res = limits.double_limit_table(job.inputs["J"], job.inputs["I"], job.b_max, job.e_max, job.p, job.tol)
    d = limits._dim_of(job.inputs["J"], job.inputs["I"])
    entries = [x for seq in res.lhs for x in seq.entries]
    entries += [(None, e, v) for e, v in enumerate(res.rhs)]
    out = {
        "lhs": [seq.values for seq in res.lhs],
        "rhs": res.rhs,
        "verdict": res.verdict,
        "difference": res.difference,
        "tolerance": res.tolerance,
        "growth_constant": res.growth_constant,
        "hypothesis_failures": res.axiom_failures,
        "csv": csv_rows(sequence_rows(entries, job.p, d), SEQUENCE_COLUMNS),
    }
    return out, EXIT_OK if res.verdict == "PASS" else EXIT_FAIL


def _h_basis(job):
    _need(job, "s", "d")
    tuples = limits.basis_search(job.options["s"], job.options["d"], job.p)
    M = limits.basis_matrix(tuples, job.options["d"], job.p)
    from .linalg import det

    return {"tuples": tuples, "matrix": M, "det": det(M)}, EXIT_OK


def _fit_json(fit):
    return {
        "degree": fit.degree,
        "nvars": fit.nvars,
        "coefficients": fit.coefficients,
        "basis_points": fit.basis_points,
        "residuals": [{"point": pt, "predicted": pr, "actual": ac, "residual": r} for pt, pr, ac, r in fit.residuals],
        "consistent": fit.consistent,
    }


def _h_fit(job):
    _need(job, "samples", "d")
    fit = limits.fit_homogeneous(job.options["d"], job.inputs["samples"])
    return {"fit": _fit_json(fit)}, EXIT_OK if fit.consistent else EXIT_FAIL


def _h_coeff_limits(job):
    _need(job, "families", "d")
    held = job.options.get("heldout")
    held = _load(held) if held else None
    res = limits.coefficient_limits(
        job.inputs["families"], job.options["d"], job.p, job.b_max, job.options.get("elive"), held
    )
    out = {
        "basis": res.basis,
        "held_out": res.held_out,
        "fits": [_fit_json(f) for f in res.fits],
        "limit": res.limit,
        "cauchy": res.cauchy,
        "polynomial_ok": res.polynomial_ok,
        "live_check": [
            {"tuple": n, "predicted": pr, "live": lv, "difference": df} for n, pr, lv, df in res.live_check
        ],
    }
    return out, EXIT_OK if res.polynomial_ok else EXIT_FAIL


_HANDLERS = {
    "ideal": _h_ideal,
    "closure": _h_closure,
    "length": _h_length,
    "count-below": _h_count_below,
    "eval": _h_eval,
    "truncate": _h_truncate,
    "verify-family": _h_verify,
    "growth": _h_growth,
    "covol": _h_covol,
    "pbody": _h_pbody,
    "minkowski": _h_minkowski,
    "props": _h_props,
    "vol-below": _h_vol_below,
    "hk": _h_hk,
    "mult": _h_mult,
    "mixed": _h_mixed,
    "verma": _h_verma,
    "dim2-rhs": _h_dim2_rhs,
    "e-vs-ehk": _h_e_vs_ehk,
    "limits": _h_limits,
    "double-limit": _h_double_limit,
    "basis": _h_basis,
    "fit": _h_fit,
    "coeff-limits": _h_coeff_limits,
}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        job = parse_inputs(sys.argv[1:] if argv is None else argv)
        code, text = run(job)
    except ParseError as exc:
        print(f"pfam: parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except SchemaError as exc:
        print(f"pfam: parse error: {exc}", file=stderr)
        return EXIT_PARSE
    except PrimeError as exc:
        print(f"pfam: {exc}", file=stderr)
        return EXIT_PRIME
    except DimensionMismatch as exc:
        print(f"pfam: dimension mismatch: {exc}", file=stderr)
        return EXIT_DIM
    except (PfamError, ValueError, ArithmeticError, RuntimeError) as exc:
        where = getattr(exc, "where", None)
        suffix = f" at {encode(where)}" if where else ""
        print(f"pfam: error: {exc}{suffix}", file=stderr)
        return EXIT_OTHER
    if job.out:
        with open(job.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
