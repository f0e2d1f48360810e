"""Batch front-end: JSON problem specs in, tables or JSON documents out.

A problem spec names a semigroup window, an arithmetic mode, coefficient
functions and one task (solve, solve-all, invert, certify, eval,
verify).  Exit codes: 0 success, 2 mathematical refusal (no simple
roots, not invertible, no certificate, ...) with the diagnostic in the
document, 1 spec or I/O errors.  Output is deterministic for a fixed
spec; the timing block is the only field that varies between runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import algebra, certificate, series, solver
from .algebra import DEFAULT_TOLERANCE, TruncatedFunction
from .errors import DirconvError, MathematicalRefusal, SpecError
from .scalars import format_rational, format_scalar, parse_rational
from .semigroup import (Lattice, OrdinaryDirichlet, RationalGenerators,
                        enumerate_semigroup)

TASKS = ("solve", "solve-all", "invert", "certify", "eval", "verify")


# ---------------------------------------------------------------------------
# spec parsing


def _need(obj, key, path):
    if key not in obj:
        raise SpecError(f"missing required field '{key}'", path)
    return obj[key]


def _parse_backend(obj, path):
    kind = _need(obj, "kind", path)
    if kind == "lattice":
        k = int(_need(obj, "k", path))
        return Lattice(k)
    if kind == "ordinary-dirichlet":
        k = int(_need(obj, "k", path))
        return OrdinaryDirichlet(k)
    if kind == "rational-generators":
        gens = _need(obj, "generators", path)
        try:
            return RationalGenerators(tuple(tuple(g) for g in gens))
        except (ValueError, TypeError) as exc:
            raise SpecError(str(exc), f"{path}.generators")
    raise SpecError(f"unknown semigroup kind {kind!r}", f"{path}.kind")


def _parse_truncation(obj, backend, path):
    has_size = "size_bound" in obj
    has_prod = "max_product" in obj
    has_max = "max_elements" in obj
    if sum((has_size, has_prod, has_max)) != 1:
        raise SpecError(
            "give exactly one of size_bound / max_product / max_elements", path)
    if has_max:
        return {"max_elements": int(obj["max_elements"])}
    if backend.kind == "ordinary-dirichlet":
        if not has_prod:
            raise SpecError(
                "ordinary-dirichlet windows are truncated by max_product "
                "(the size bound is then log(max_product))", path)
        return {"size_bound": int(obj["max_product"])}
    if has_prod:
        raise SpecError("max_product only applies to ordinary-dirichlet", path)
    try:
        return {"size_bound": parse_rational(obj["size_bound"])}
    except ValueError as exc:
        raise SpecError(str(exc), f"{path}.size_bound")


def _parse_function(obj, enum, exact, path):
    if not isinstance(obj, dict):
        raise SpecError("a function spec must be an object", path)
    keys = set(obj) & {"builtin", "const", "indicator", "table"}
    if len(keys) != 1:
        raise SpecError(
            "need exactly one of builtin / const / indicator / table", path)
    kind = keys.pop()
    try:
        if kind == "builtin":
            name = obj["builtin"]
            if name == "unit":
                return algebra.unit(enum, exact)
            if name == "one":
                return algebra.one(enum, exact)
            raise SpecError(f"unknown builtin {name!r}", path)
        if kind == "const":
            return algebra.constant(enum, _scalar(obj["const"], exact), exact)
        if kind == "indicator":
            ident = _ident(obj["indicator"], enum, path)
            value = _scalar(obj.get("value", 1), exact)
            return algebra.indicator(enum, ident, value, exact)
        pairs = []
        for row, entry in enumerate(obj["table"]):
            if not isinstance(entry, (list, tuple)) or len(entry) != 2:
                raise SpecError("table rows are [element, value] pairs",
                                f"{path}.table[{row}]")
            ident = _ident(entry[0], enum, f"{path}.table[{row}]")
            pairs.append((ident, _scalar(entry[1], exact)))
        return algebra.from_pairs(enum, pairs, exact)
    except SpecError:
        raise
    except DirconvError as exc:
        raise SpecError(str(exc), path)
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc), path)


def _ident(raw, enum, path):
    if not isinstance(raw, (list, tuple)):
        raise SpecError("an element is a list of per-coordinate entries", path)
    try:
        ident = enum.backend.validate_ident(raw)
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc), path)
    if ident not in enum:
        raise SpecError(f"element {raw!r} lies outside the enumerated window",
                        path)
    return ident


def _scalar(raw, exact):
    from .scalars import parse_scalar

    return parse_scalar(raw, exact)


def _parse_point(raw, k, path):
    def comp(v):
        if isinstance(v, dict):
            return complex(float(v.get("re", 0)), float(v.get("im", 0)))
        if isinstance(v, str):
            return complex(float(parse_rational(v)))
        return complex(v)

    try:
        if isinstance(raw, (list, tuple)):
            if len(raw) != k:
                raise SpecError(f"point needs {k} components", path)
            return tuple(comp(v) for v in raw)
        return comp(raw)
    except (ValueError, TypeError) as exc:
        raise SpecError(str(exc), path)


class Problem:
    """A validated problem spec, ready to run."""

    def __init__(self, raw):
        if not isinstance(raw, dict):
            raise SpecError("the spec must be a JSON object")
        sg = _need(raw, "semigroup", "")
        self.backend = _parse_backend(sg, "semigroup")
        trunc = _parse_truncation(sg, self.backend, "semigroup")
        try:
            self.enum = enumerate_semigroup(self.backend, **trunc)
        except DirconvError as exc:
            raise SpecError(str(exc), "semigroup")
        arith = raw.get("arithmetic", {})
        mode = arith.get("mode", "exact")
        if mode not in ("exact", "double"):
            raise SpecError(f"unknown mode {mode!r}", "arithmetic.mode")
        self.exact = mode == "exact"
        self.tolerance = float(arith.get("tolerance", DEFAULT_TOLERANCE))
        eq = _need(raw, "equation", "")
        coeff_specs = _need(eq, "coefficients", "equation")
        if not isinstance(coeff_specs, list) or not coeff_specs:
            raise SpecError("equation.coefficients must be a non-empty list",
                            "equation.coefficients")
        self.coefficients = [
            _parse_function(c, self.enum, self.exact,
                            f"equation.coefficients[{i}]")
            for i, c in enumerate(coeff_specs)]
        task = _need(raw, "task", "")
        self.task_type = _need(task, "type", "task")
        if self.task_type not in TASKS:
            raise SpecError(f"unknown task {self.task_type!r}", "task.type")
        self.task = task
        self._check_counts()
        self.raw = raw

    def _check_counts(self):
        n = len(self.coefficients)
        if self.task_type in ("solve", "solve-all", "certify", "verify"):
            if n < 2:
                raise SpecError(
                    "equation tasks need coefficients a_0, ..., a_d with d >= 1",
                    "equation.coefficients")
        elif n != 1:
            raise SpecError(f"task {self.task_type!r} takes exactly one function",
                            "equation.coefficients")

    def root(self):
        if "root" not in self.task:
            raise SpecError(f"task {self.task_type!r} needs a root", "task.root")
        return _scalar(self.task["root"], self.exact)

    def points(self):
        pts = self.task.get("points")
        if not isinstance(pts, list) or not pts:
            raise SpecError("task needs a non-empty list of points", "task.points")
        return [_parse_point(p, self.backend.k, f"task.points[{i}]")
                for i, p in enumerate(pts)]

    def rho(self):
        return parse_rational(self.task.get("rho", 0))

    def norm_bounds(self):
        nb = self.task.get("norm_bounds")
        if nb is None:
            return None
        return [float(v) for v in nb]


# ---------------------------------------------------------------------------
# document assembly


def _element_row(enum, i, value):
    e = enum[i]
    return {
        "id": enum.backend.ident_json(e.ident),
        "coords": enum.backend.ident_json(e.coords),
        "size": float(e.size),
        "value": format_scalar(value),
    }


def _function_table(g: TruncatedFunction):
    return [_element_row(g.enum, i, v) for i, v in enumerate(g.values)]


def _root_report_doc(report: solver.RootReport):
    return {
        "anchor_coefficients": [format_scalar(c) for c in report.f_coeffs],
        "degree": report.degree,
        "roots": [{
            "value": format_scalar(r.value),
            "multiplicity": r.multiplicity,
            "simple": r.simple,
            "exact": r.exact,
        } for r in report.roots],
    }


def _certificate_doc(cert: certificate.NormCertificate):
    return {
        "rho": format_rational(cert.rho),
        "m1": float(cert.m1),
        "z0": format_scalar(cert.z0),
        "t_star": cert.t_star,
        "C": cert.C,
        "r": cert.r,
        "scope": cert.scope,
    }


def _residual_doc(T, g):
    res = solver.residual(T, g)
    return {
        "exact_zero": res.is_zero(),
        "max_abs": res.max_abs(),
    }


def _series_doc(values):
    out = []
    for sv in values:
        entry = {
            "s": [format_scalar(c) for c in sv.s],
            "value": format_scalar(sv.value),
        }
        if sv.tail is not None:
            entry["tail_bound"] = sv.tail
        out.append(entry)
    return out


def run_problem(problem: Problem) -> dict:
    """Execute the task; returns the result document (without timing)."""
    doc = {
        "backend": {"kind": problem.backend.kind, "k": problem.backend.k},
        "mode": "exact" if problem.exact else "double",
        "task": problem.task_type,
        "window_size": len(problem.enum),
    }
    ttype = problem.task_type
    if ttype == "invert":
        g = algebra.invert(problem.coefficients[0], tol=problem.tolerance)
        doc["solution"] = _function_table(g)
        return doc

    if ttype == "eval":
        g = problem.coefficients[0]
        values = [series.evaluate(g, p) for p in problem.points()]
        doc["series"] = _series_doc(values)
        return doc

    T = solver.ConvPolynomial(tuple(problem.coefficients))
    if ttype == "solve":
        g = solver.solve(T, problem.root())
        doc["root_report"] = _root_report_doc(solver.initial_polynomial(T))
        doc["solution"] = _function_table(g)
        doc["residual"] = _residual_doc(T, g)
        return doc

    if ttype == "solve-all":
        result = solver.solve_all(T, tol=problem.tolerance)
        doc["root_report"] = _root_report_doc(result.report)
        doc["solutions"] = [{
            "root": format_scalar(root.value),
            "table": _function_table(g),
        } for root, g in result.solutions]
        doc["skipped_roots"] = [{
            "root": format_scalar(root.value), "reason": reason,
        } for root, reason in result.skipped]
        doc["residual"] = {
            "all_exact_zero": all(solver.residual(T, g).is_zero()
                                  for _, g in result.solutions),
            "max_abs": max((solver.residual(T, g).max_abs()
                            for _, g in result.solutions), default=0.0),
        }
        return doc

    if ttype == "certify":
        z0 = problem.root()
        g = solver.solve(T, z0)
        cert = certificate.certify(T, z0, problem.rho(), problem.norm_bounds())
        report = certificate.validate(cert, g)
        doc["root_report"] = _root_report_doc(solver.initial_polynomial(T))
        doc["solution"] = _function_table(g)
        doc["certificate"] = _certificate_doc(cert)
        doc["validation"] = {
            "ok": report.ok,
            "sum_margin": report.sum_margin,
            "recursive_margin": report.recursive_margin,
        }
        doc["residual"] = _residual_doc(T, g)
        return doc

    # verify: solve + certify + validate + scalar equation at the points
    z0 = problem.root()
    g = solver.solve(T, z0)
    cert = certificate.certify(T, z0, problem.rho(), problem.norm_bounds())
    report = certificate.validate(cert, g)
    points = problem.points()
    vr = series.verify_scalar_equation(T, g, points, cert=cert)
    doc["certificate"] = _certificate_doc(cert)
    doc["validation"] = {
        "ok": report.ok,
        "sum_margin": report.sum_margin,
        "recursive_margin": report.recursive_margin,
    }
    doc["scalar_equation"] = {
        "all_ok": vr.all_ok,
        "worst_ratio": vr.worst_ratio,
        "points": [{
            "s": [format_scalar(c) for c in pc.s],
            "residual": pc.residual,
            "allowance": pc.allowance,
            "ok": pc.ok,
        } for pc in vr.points],
    }
    svs = []
    for p in points:
        sv = series.evaluate(g, p)
        svs.append(series.SeriesValue(sv.value, sv.s, sv.window,
                                      series.tail_bound(g, cert, p)))
    doc["series"] = _series_doc(svs)
    doc["residual"] = _residual_doc(T, g)
    return doc


# ---------------------------------------------------------------------------
# rendering


def render(doc: dict, fmt: str = "table") -> str:
    if fmt == "json":
        return json.dumps(doc, sort_keys=True, indent=2)
    if fmt != "table":
        raise ValueError(f"unknown format {fmt!r}")
    lines = []
    head = f"dirconv  task={doc.get('task')}  backend={doc['backend']['kind']}" \
           f"(k={doc['backend']['k']})  mode={doc.get('mode')}"
    lines.append(head)
    if "spec_sha256" in doc:
        lines.append(f"spec sha256: {doc['spec_sha256']}")
    if "diagnostic" in doc:
        lines.append(f"REFUSED: {doc['diagnostic']}")
    if "root_report" in doc:
        lines.append("anchor roots:")
        for r in doc["root_report"]["roots"]:
            lines.append(f"  value={_fmt_val(r['value']):<24} "
                         f"multiplicity={r['multiplicity']} simple={r['simple']}")
    for key, title in (("solution", "solution"),):
        if key in doc:
            lines.extend(_render_table(doc[key], title))
    if "solutions" in doc:
        for sol in doc["solutions"]:
            lines.extend(_render_table(sol["table"],
                                       f"solution at root {_fmt_val(sol['root'])}"))
    if "certificate" in doc:
        c = doc["certificate"]
        lines.append("certificate:")
        lines.append(f"  rho={c['rho']}  m1={c['m1']:.12g}  z0={_fmt_val(c['z0'])}")
        lines.append(f"  t_star={c['t_star']:.12g}  C={c['C']:.12g}  "
                     f"r={c['r']:.12g}  scope={c['scope']}")
    if "validation" in doc:
        v = doc["validation"]
        lines.append(f"validation: ok={v['ok']}  sum_margin={v['sum_margin']:.6g}"
                     f"  recursive_margin={v['recursive_margin']:.6g}")
    if "residual" in doc:
        r = doc["residual"]
        zero = r.get("exact_zero", r.get("all_exact_zero"))
        lines.append(f"residual: exact_zero={zero}  max_abs={r['max_abs']:.6g}")
    if "scalar_equation" in doc:
        se = doc["scalar_equation"]
        lines.append(f"scalar equation: all_ok={se['all_ok']}  "
                     f"worst_ratio={se['worst_ratio']:.6g}")
    if "series" in doc:
        lines.append("series values:")
        for entry in doc["series"]:
            s = ", ".join(_fmt_val(c) for c in entry["s"])
            tail = (f"  tail<={entry['tail_bound']:.6g}"
                    if "tail_bound" in entry else "")
            lines.append(f"  s=({s}): value={_fmt_val(entry['value'])}{tail}")
    if "timing" in doc:
        lines.append(f"timing: {doc['timing']['seconds']:.3f} s")
    return "\n".join(lines) + "\n"


def _fmt_val(v):
    if isinstance(v, dict):
        return f"{v.get('re', 0)}+{v.get('im', 0)}i"
    return str(v)


def _render_table(rows, title):
    out = [f"{title}:"]
    out.append(f"  {'id':<18} {'coords':<18} {'size':<12} value")
    for row in rows:
        out.append(f"  {str(row['id']):<18} {str(row['coords']):<18} "
                   f"{row['size']:<12.6g} {_fmt_val(row['value'])}")
    return out


# ---------------------------------------------------------------------------
# entry points


def run(spec_path: str, fmt: str = "table", out_path=None, threads: int = 1,
        tolerance=None):
    """Load, validate and execute a spec file; returns (document, exit_code)."""
    try:
        with open(spec_path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        return {"error": str(exc)}, 1
    except json.JSONDecodeError as exc:
        return {"error": f"invalid JSON at line {exc.lineno}, column {exc.colno}: "
                         f"{exc.msg}"}, 1
    spec_hash = hashlib.sha256(
        json.dumps(raw, sort_keys=True, separators=(",", ":")).encode()).hexdigest()
    if threads < 1:
        return {"error": "--threads must be >= 1"}, 1
    try:
        problem = Problem(raw)
        if tolerance is not None:
            problem.tolerance = float(tolerance)
        started = time.perf_counter()
        doc = run_problem(problem)
        elapsed = time.perf_counter() - started
        code = 0
    except SpecError as exc:
        return {"error": str(exc), "field": exc.path, "spec_sha256": spec_hash}, 1
    except (ValueError, TypeError, KeyError) as exc:
        return {"error": f"{type(exc).__name__}: {exc}", "spec_sha256": spec_hash}, 1
    except MathematicalRefusal as exc:
        doc = {"task": raw.get("task", {}).get("type"),
               "backend": {"kind": raw["semigroup"]["kind"],
                           "k": raw["semigroup"].get("k", 1)},
               "mode": raw.get("arithmetic", {}).get("mode", "exact"),
               "diagnostic": _refusal_text(exc)}
        elapsed = 0.0
        code = 2
    except DirconvError as exc:
        return {"error": str(exc), "spec_sha256": spec_hash}, 1
    doc["spec_sha256"] = spec_hash
    doc["timing"] = {"seconds": elapsed}
    return doc, code


def _refusal_text(exc) -> str:
    text = f"{type(exc).__name__}: {exc}"
    obstructions = getattr(exc, "obstructions", ())
    for ob in obstructions:
        text += (f"; at q = {ob.q.ident} the equation forces the value "
                 f"{format_scalar(ob.value)} != 0 whatever g(q) is")
    return text


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dirconv",
        description="solve, certify and evaluate convolution equations on "
                    "discrete semigroup windows")
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="execute a JSON problem spec")
    runp.add_argument("spec", help="path to the problem spec (JSON)")
    runp.add_argument("--format", choices=("table", "json"), default="table")
    runp.add_argument("--out", default=None, help="write output to a file")
    runp.add_argument("--threads", type=int, default=1,
                      help="worker threads (results are identical for any value)")
    runp.add_argument("--tolerance", type=float, default=None,
                      help="double-mode comparison tolerance")
    args = parser.parse_args(argv)

    doc, code = run(args.spec, fmt=args.format, out_path=args.out,
                    threads=args.threads, tolerance=args.tolerance)
    if "error" in doc:
        sys.stderr.write(f"error: {doc['error']}\n")
        text = json.dumps(doc, sort_keys=True, indent=2) + "\n"
    else:
        text = render(doc, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
