"""Command-line front end: every operation reads and writes versioned JSON.

Exit codes: 0 success, 2 mathematical precondition failure, 64 usage error
(unknown subcommand, bad flags, missing file), 65 malformed input document.
Results go to stdout, diagnostics (one JSON object) to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import io as dio
from .arith.fields import field_from_tag
from .arith.matrix import Matrix, pfaffian
from .arith.poly import PolyRing
from .complexes import (ChainMap, Complex, hom_complex, homology, induced_on_homology,
                        is_quasi_iso, soft_truncate, solve_null_homotopy, suspend,
                        tensor_complex)
from .dg import (DGAlgebra, DGModule, base_change, dg_hom, dg_tensor, soft_truncate_module,
                 verify_dg_algebra, verify_dg_module)
from .errors import DGKitError, ParseError
from .koszul import koszul_via_exterior
from .moduli import (act_on, generate_constraints, tangent_space, tangent_space_dual,
                     yext_dimension)
from .resolutions import (alternating_family, build_buchsbaum_eisenbud, build_hilbert_burch,
                          buchsbaum_eisenbud_row)
from .semifree import ext, is_semidualizing_dg, semifree_resolution

EX_OK, EX_MATH, EX_USAGE, EX_DATAERR = 0, 2, 64, 65

SUBCOMMANDS = ("koszul", "hom", "tensor", "suspend", "truncate", "homology", "quasiiso",
               "nullhomotopy", "verify-dga", "verify-dgm", "basechange", "dghom", "dgtensor",
               "semifree", "ext", "semidualizing", "hb", "be3", "pfaffian", "moduli", "act",
               "tangent", "yext")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# input helpers ----------------------------------------------------------------------------


def _read_json(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None


def _load(path, *kinds, check=True, algebra=None):
    obj = _read_json(path)
    if not isinstance(obj, dict):
        raise dio.SchemaError(f"{path}: expected a JSON object")
    tag = obj.get("schema")
    wanted = {Complex: "complex.v1", ChainMap: "chainmap.v1", DGAlgebra: "dgalgebra.v1",
              DGModule: "dgmodule.v1"}
    if tag not in [wanted[k] for k in kinds]:
        raise dio.SchemaError(f"{path}: expected schema {' or '.join(wanted[k] for k in kinds)}, "
                              f"got {tag!r}")
    if tag == "dgmodule.v1":
        return dio.dgmodule_from_payload(obj, algebra=algebra, check=check)
    if tag == "dgalgebra.v1":
        return dio.dgalgebra_from_payload(obj, check=check)
    return dio.from_payload(obj)


def _field(args):
    try:
        return field_from_tag(args.ring, args.prime)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _split(text):
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


def _matrix_input(args):
    """A matrix from a file (``{ring, variables, matrix}`` or a bare list of rows) or ``--matrix``."""
    if args.matrix_file:
        obj = _read_json(args.matrix_file)
    elif args.matrix:
        try:
            obj = json.loads(args.matrix)
        except json.JSONDecodeError as exc:
            raise ParseError(f"--matrix: malformed JSON ({exc.msg})") from None
    else:
        return None
    if isinstance(obj, dict):
        ring = dio.ring_from_payload(obj)
        rows = obj.get("matrix")
    else:
        field = _field(args)
        names = _split(args.vars)
        ring = PolyRing(field, names) if names else field
        rows = obj
    return dio.matrix_from_payload(ring, rows)


# commands -----------------------------------------------------------------------------------


def _complex_text(c: Complex) -> str:
    lines = [f"ring {c.ring.name}, degrees {c.lo}..{c.hi}, ranks {c.ranks}"]
    for i in range(c.lo + 1, c.hi + 1):
        if c.rank(i) and c.rank(i - 1):
            lines.append(f"d{i} = {json.dumps(dio.matrix_payload(c.d(i)))}")
    return "\n".join(lines)


def cmd_koszul(args):
    field = _field(args)
    names = _split(args.vars)
    if not names:
        raise UsageError("--vars is required")
    ring = PolyRing(field, names)
    k = koszul_via_exterior(ring, ring.gens())
    return dio.complex_payload(k), _complex_text(k)


def cmd_hom(args):
    x, y = _load(args.source, Complex), _load(args.target, Complex)
    h = hom_complex(x, y)
    return dio.complex_payload(h), _complex_text(h)


def cmd_tensor(args):
    x, y = _load(args.left, Complex), _load(args.right, Complex)
    t = tensor_complex(x, y)
    return dio.complex_payload(t), _complex_text(t)


def cmd_suspend(args):
    x = _load(args.input, Complex)
    s = suspend(x, args.shift)
    return dio.complex_payload(s), _complex_text(s)


def cmd_truncate(args):
    x = _load(args.input, Complex, DGModule)
    if isinstance(x, DGModule):
        m, _ = soft_truncate_module(x, args.degree)
        return dio.dgmodule_payload(m), _complex_text(m.complex)
    t, _ = soft_truncate(x, args.degree)
    return dio.complex_payload(t), _complex_text(t)


def cmd_homology(args):
    x = _load(args.input, Complex, DGModule)
    c = x.complex if isinstance(x, DGModule) else x
    h = homology(c)
    reps = {str(i): [[c.ring.format(v) for v in r] for r in h[i].representatives]
            for i in c.degrees() if h.dim(i)}
    payload = {"homology": {str(i): h.dim(i) for i in c.degrees()}, "representatives": reps}
    text = "\n".join(f"H_{i} = {h.dim(i)}" for i in c.degrees())
    return payload, text


def cmd_quasiiso(args):
    f = _load(args.input, ChainMap)
    if not f.is_chain_map():
        raise DGKitError("the input is not a chain map")
    induced = induced_on_homology(f)
    q = is_quasi_iso(f)
    payload = {"quasi_iso": q,
               "induced": {str(i): dio.matrix_payload(m) for i, m in sorted(induced.items())
                           if m.nrows and m.ncols}}
    return payload, f"quasi-isomorphism: {'yes' if q else 'no'}"


def cmd_nullhomotopy(args):
    f = _load(args.input, ChainMap)
    s = solve_null_homotopy(f)
    payload = {"null_homotopic": s is not None,
               "homotopy": dio.chainmap_payload(s) if s is not None else None}
    return payload, f"null-homotopic: {'yes' if s is not None else 'no'}"


def _report(rep):
    payload = {"ok": rep.ok, "axiom": rep.axiom,
               "witness": json.loads(json.dumps(rep.witness)) if rep.witness is not None else None,
               "detail": rep.detail}
    return payload, rep.describe()


def cmd_verify_dga(args):
    return _report(verify_dg_algebra(_load(args.input, DGAlgebra, check=False)))


def cmd_verify_dgm(args):
    alg = _load(args.algebra, DGAlgebra) if args.algebra else None
    return _report(verify_dg_module(_load(args.input, DGModule, check=False, algebra=alg)))


def _module_args(args, *paths):
    alg = _load(args.algebra, DGAlgebra) if getattr(args, "algebra", None) else None
    return [_load(p, DGModule, algebra=alg) for p in paths]


def cmd_basechange(args):
    a = _load(args.algebra, DGAlgebra)
    x = _load(args.input, Complex)
    m = base_change(a, x)
    return dio.dgmodule_payload(m), _complex_text(m.complex)


def cmd_dghom(args):
    m, n = _module_args(args, args.source, args.target)
    h = dg_hom(m, n, args.cap)
    return dio.dgmodule_payload(h), _complex_text(h.complex)


def cmd_dgtensor(args):
    m, n = _module_args(args, args.left, args.right)
    t = dg_tensor(m, n)
    return dio.dgmodule_payload(t), _complex_text(t.complex)


def cmd_semifree(args):
    (m,) = _module_args(args, args.module)
    res = semifree_resolution(m, args.cap)
    f = res.morphism.map
    payload = {"semifree": dio.dgmodule_payload(res.module, include_algebra=False),
               "semibasis": [[d, i] for d, i in res.semifree.semibasis],
               "cap": res.cap,
               "morphism": {str(p): dio.matrix_payload(mm) for p, mm in f.components.items()
                            if mm.nrows and mm.ncols}}
    text = (f"semibasis degrees {res.semifree.generator_degrees()}\n"
            f"ranks {res.module.complex.ranks} (degrees {res.module.lo}..{res.module.hi})")
    return payload, text


def cmd_ext(args):
    (m,) = _module_args(args, args.module)
    n = _module_args(args, args.target)[0] if args.target else m
    table = ext(m, n, args.cap)
    text = "\n".join(f"Ext^{i} = {d}" for i, d in enumerate(table.as_list()))
    text += f"\ncertified through {table.certified_through}"
    return table.to_json(), text


def cmd_semidualizing(args):
    (c,) = _module_args(args, args.module)
    v = is_semidualizing_dg(c, args.cap)
    payload = {"semidualizing": v.ok, "certified_from": v.certified_from, "witness": v.witness,
               "detail": v.detail}
    return payload, f"semidualizing: {'yes' if v.ok else 'no'}" + (f" ({v.detail})" if v.detail else "")


def _structured(res):
    payload = {"complex": dio.complex_payload(res.complex),
               "row": [res.complex.ring.format(x) for x in res.row],
               "products": [f"{u}*{v} = {w}" for (u, v), w in res.products().items()]}
    text = (f"row: ({', '.join(payload['row'])})\n" + res.format_products())
    return payload, text


def cmd_hb(args):
    a = _matrix_input(args)
    if a is None:
        raise UsageError("hb needs a matrix (file or --matrix)")
    scale = a.ring.parse(args.scalar) if args.scalar else None
    return _structured(build_hilbert_burch(a, scale))


def cmd_be3(args):
    a = _matrix_input(args)
    if a is None:
        if not args.family:
            raise UsageError("be3 needs a matrix (file or --matrix) or --family n")
        ring = PolyRing(_field(args), ["x", "y", "z"])
        a = alternating_family(ring, args.family)
    return _structured(build_buchsbaum_eisenbud(a, args.sign_flag))


def cmd_pfaffian(args):
    a = _matrix_input(args)
    if a is None:
        raise UsageError("pfaffian needs a matrix (file or --matrix)")
    ring = a.ring
    if a.nrows % 2 == 0:
        pf = pfaffian(a)
        return {"pfaffian": ring.format(pf)}, ring.format(pf)
    row = buchsbaum_eisenbud_row(a, args.sign_flag)
    sub = [ring.format(x) for x in row]
    return {"pfaffian": "0", "submaximal": sub}, "\n".join(sub)


def _instance(args):
    alg = _load(args.algebra, DGAlgebra)
    try:
        dims = [int(x) for x in _split(args.dims)]
    except ValueError:
        raise UsageError("--dims must be a comma-separated list of integers") from None
    names = _split(args.names) or None
    return generate_constraints(alg, dims, names)


def _point(inst, path):
    obj = _read_json(path)
    values = obj.get("values", obj) if isinstance(obj, dict) else obj
    if isinstance(values, dict):
        values = {k: str(v) for k, v in values.items()}
    elif isinstance(values, list):
        values = [str(v) for v in values]
    else:
        raise dio.SchemaError("a point is a list of values or a name -> value object")
    try:
        return inst.point(values)
    except ValueError as exc:
        raise dio.SchemaError(str(exc)) from None


def _point_payload(p):
    F = p.instance.algebra.ring
    return {"values": {n: F.format(v) for n, v in p.as_dict().items()}}


def _require_valid(p):
    if not p.is_valid():
        raise DGKitError("the point does not define a DG module structure")


def cmd_moduli(args):
    inst = _instance(args)
    payload = inst.summary()
    text = "\n".join(payload["constraints"]) or "(no constraints)"
    if args.point:
        p = _point(inst, args.point)
        _require_valid(p)
        rep = yext_dimension(p)
        payload["tangent_report"] = rep.to_json()
        text += f"\ntangent {rep.tangent_dim}, orbit {rep.orbit_dim}, quotient {rep.quotient_dim}"
    return payload, text


def cmd_act(args):
    inst = _instance(args)
    p = _point(inst, args.point)
    obj = _read_json(args.alpha)
    if not isinstance(obj, dict):
        raise dio.SchemaError("alpha must map degrees to matrices")
    F = inst.algebra.ring
    alpha = {}
    for k, rows in obj.items():
        i = int(k)
        n = inst.rank(i)
        alpha[i] = dio.matrix_from_payload(F, rows, n, n)
    q = act_on(p, alpha)
    payload = _point_payload(q)
    return payload, "\n".join(f"{k} = {v}" for k, v in payload["values"].items())


def cmd_tangent(args):
    inst = _instance(args)
    p = _point(inst, args.point)
    _require_valid(p)
    F = inst.algebra.ring
    basis = tangent_space_dual(p) if args.dual else tangent_space(p)
    payload = {"dim": len(basis), "basis": [[F.format(x) for x in v] for v in basis]}
    return payload, f"tangent dimension {len(basis)}"


def cmd_yext(args):
    inst = _instance(args)
    p = _point(inst, args.point)
    _require_valid(p)
    rep = yext_dimension(p)
    return rep.to_json(), f"YExt^1 dimension {rep.quotient_dim}"


# parser --------------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--ring", default="Q", help="Q, Fp (with --prime) or F<p>")
    common.add_argument("--prime", type=int)

    p = _Parser(prog="dgkit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, fn, help_):
        s = sub.add_parser(name, parents=[common], help=help_)
        s.set_defaults(func=fn)
        return s

    s = add("koszul", cmd_koszul, "Koszul complex on the given variables")
    s.add_argument("--vars", required=True)
    s = add("hom", cmd_hom, "Hom complex of two complexes")
    s.add_argument("source")
    s.add_argument("target")
    s = add("tensor", cmd_tensor, "tensor product of two complexes")
    s.add_argument("left")
    s.add_argument("right")
    s = add("suspend", cmd_suspend, "suspension")
    s.add_argument("input")
    s.add_argument("--shift", type=int, default=1)
    s = add("truncate", cmd_truncate, "soft left truncation of a complex or DG module")
    s.add_argument("input")
    s.add_argument("--degree", type=int, required=True)
    s = add("homology", cmd_homology, "homology over a field")
    s.add_argument("input")
    s = add("quasiiso", cmd_quasiiso, "is a chain map a quasi-isomorphism")
    s.add_argument("input")
    s = add("nullhomotopy", cmd_nullhomotopy, "find a null-homotopy of a chain map")
    s.add_argument("input")
    s = add("verify-dga", cmd_verify_dga, "check the DG algebra axioms")
    s.add_argument("input")
    s = add("verify-dgm", cmd_verify_dgm, "check the DG module axioms")
    s.add_argument("input")
    s.add_argument("--algebra")
    s = add("basechange", cmd_basechange, "A tensor X for a complex X")
    s.add_argument("input")
    s.add_argument("--algebra", required=True)
    for name, fn, a, b in (("dghom", cmd_dghom, "source", "target"),
                           ("dgtensor", cmd_dgtensor, "left", "right")):
        s = add(name, fn, f"{name[2:]} of two DG modules over the same algebra")
        s.add_argument(a)
        s.add_argument(b)
        s.add_argument("--algebra")
        if name == "dghom":
            s.add_argument("--cap", type=int, help="lowest degree computed")
    s = add("semifree", cmd_semifree, "semi-free resolution through a degree cap")
    s.add_argument("--module", required=True)
    s.add_argument("--algebra")
    s.add_argument("--cap", type=int, default=6)
    s = add("ext", cmd_ext, "Ext over a finite-dimensional DG algebra")
    s.add_argument("--module", required=True)
    s.add_argument("--target")
    s.add_argument("--algebra")
    s.add_argument("--cap", type=int, default=6)
    s = add("semidualizing", cmd_semidualizing, "semidualizing test")
    s.add_argument("--module", required=True)
    s.add_argument("--algebra")
    s.add_argument("--cap", type=int, default=6)
    for name, fn, help_ in (("hb", cmd_hb, "length-two resolution with its DG structure"),
                            ("be3", cmd_be3, "length-three resolution with its DG structure"),
                            ("pfaffian", cmd_pfaffian, "Pfaffian or signed submaximal Pfaffians")):
        s = add(name, fn, help_)
        s.add_argument("matrix_file", nargs="?")
        s.add_argument("--matrix", help="matrix as a JSON list of rows of strings")
        s.add_argument("--vars", default="")
        if name != "hb":
            s.add_argument("--sign-flag", choices=("a", "b"), default="b")
        if name == "hb":
            s.add_argument("--scalar", help="the unit multiplying every product")
        if name == "be3":
            s.add_argument("--family", type=int, help="use the standard n x n alternating matrix")
    for name, fn, help_ in (("moduli", cmd_moduli, "equations of the DG module structures"),
                            ("act", cmd_act, "act by a graded automorphism"),
                            ("tangent", cmd_tangent, "tangent space at a point"),
                            ("yext", cmd_yext, "tangent modulo orbit tangent")):
        s = add(name, fn, help_)
        s.add_argument("--algebra", required=True)
        s.add_argument("--dims", required=True)
        s.add_argument("--names", default="")
        s.add_argument("--point", required=name != "moduli")
        if name == "act":
            s.add_argument("--alpha", required=True)
        if name == "tangent":
            s.add_argument("--dual", action="store_true", help="use dual numbers")
    return p


def _diagnostic(code, kind, message, stream):
    stream.write(json.dumps({"error": kind, "exit": code, "message": message}) + "\n")
    return code


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return _diagnostic(EX_USAGE, "usage", str(exc), stderr)
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if not getattr(args, "command", None):
        return _diagnostic(EX_USAGE, "usage", "a subcommand is required", stderr)
    try:
        payload, text = args.func(args)
    except UsageError as exc:
        return _diagnostic(EX_USAGE, "usage", str(exc), stderr)
    except ParseError as exc:
        return _diagnostic(EX_DATAERR, "data", str(exc), stderr)
    except (DGKitError, ValueError, ZeroDivisionError) as exc:
        return _diagnostic(EX_MATH, "precondition", str(exc), stderr)
    if args.format == "text":
        stdout.write(text + "\n")
    else:
        stdout.write(json.dumps(payload, indent=2) + "\n")
    return EX_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
