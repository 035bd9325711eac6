"""Command-line front end.

Two small recursive-descent parsers (the polynomial expression grammar and
the Euler-geometry program language) plus subcommands that wire the library
together for batch use.  Output is JSON by default; --output tsv flattens
the same report one key path per column.

Exit codes: 0 success, 1 user or input error, 2 internal invariant failure.
"""

import argparse
import json
import random
import sys
from fractions import Fraction

from .groebner import (NOT_ZERO_DIMENSIONAL, buchberger, jacobian_ideal,
                       node_count_modular, reducedness_probe, zero_dim_degree)
from .hodge import (euler_blowup, euler_nodal_threefold, euler_of_Pn,
                    euler_product, euler_resolution, euler_sum,
                    adjoint_rank_report, mhs_dims, modular_adjoint_report,
                    smooth_hodge_numbers, EulerPolynomial)
from .pencil import (INFINITY, NoOperatorFound, Pencil,
                     indicial_exponents, picard_fuchs, unipotency_class)
from .polyring import Polynomial, elementary_symmetric, power_sum
from .scalars import DEFAULT_PRIMES, QQ, QQ_T, RatFun


class ParseError(ValueError):
    """Syntax or validation problem in user text, carrying a position."""

    def __init__(self, message, line, col):
        super().__init__("%s at line %d, column %d" % (message, line, col))
        self.line = line
        self.col = col


class CliError(ValueError):
    """Input problem detected outside the parsers."""


# ---- tokenizer shared by both grammars ------------------------------------


_PUNCT = "+-*^()/,"


def _tokenize(text):
    """(kind, text, line, col) tokens; kind is 'ident', 'int', 'end' or the
    punctuation character itself.  Columns are 1-based."""
    toks = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            col += 1
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("int", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("ident", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            toks.append((ch, ch, line, col))
            col += 1
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, line, col)
    if toks:
        # report end-of-input just past the last real token, not wherever
        # trailing whitespace left the cursor
        _, text_, eline, ecol = toks[-1]
        toks.append(("end", "", eline, ecol + len(text_)))
    else:
        toks.append(("end", "", line, col))
    return toks


class _TokenStream:
    def __init__(self, toks):
        self.toks = toks
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def take(self):
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok if tok is not None else self.peek()
        raise ParseError(message, tok[2], tok[3])

    def expect(self, kind, message=None):
        tok = self.take()
        if tok[0] != kind:
            self.fail(message or "expected %r" % kind, tok)
        return tok


# ---- polynomial grammar ----------------------------------------------------
#
#   expr   := '-'? term (('+' | '-') term)*
#   term   := factor ('*'? factor)*
#   factor := base ('^' uint)?
#   base   := ident | rational | '(' expr ')'
#   ident  := declared variable | 'p_'uint | 'e_'uint | 't'
#
# The optional leading '-' is a superset of the documented grammar so that
# rendered polynomials always reparse.


class _PolyParser(_TokenStream):
    def __init__(self, toks, varnames, field, allow_t):
        super().__init__(toks)
        self.nvars = len(varnames)
        self.field = field
        self.allow_t = allow_t
        self.index = {name: i for i, name in enumerate(varnames)}

    def expr(self):
        negate = False
        if self.peek()[0] == "-":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while True:
            kind = self.peek()[0]
            if kind == "*":
                self.take()
                acc = acc * self.factor()
            elif kind in ("ident", "int", "("):
                # implicit product, e.g. "3x0" or "(x0+x1)(x0-x1)"
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            tok = self.expect("int", "expected an exponent")
            return base ** int(tok[1])
        return base

    def base(self):
        tok = self.take()
        if tok[0] == "(":
            inner = self.expr()
            closing = self.take()
            if closing[0] != ")":
                self.fail("unbalanced parentheses", closing)
            return inner
        if tok[0] == "int":
            return self.rational_tail(int(tok[1]))
        if tok[0] == "ident":
            return self.named(tok)
        self.fail("expected a polynomial term", tok)

    def rational_tail(self, num):
        q = Fraction(num)
        if self.peek()[0] == "/":
            self.take()
            tok = self.expect("int", "expected an integer denominator")
            if int(tok[1]) == 0:
                self.fail("zero denominator", tok)
            q = Fraction(num, int(tok[1]))
        return Polynomial.constant(self.field.from_fraction(q),
                                   self.nvars, self.field)

    def named(self, tok):
        name = tok[1]
        if name == "t":
            if not self.allow_t:
                self.fail("parameter 't' is not allowed here", tok)
            return Polynomial.constant(RatFun.t(), self.nvars, self.field)
        if name in self.index:
            return Polynomial.variable(self.index[name], self.nvars,
                                       self.field)
        if len(name) > 2 and name[0] in "pe" and name[1] == "_" \
                and name[2:].isdigit():
            k = int(name[2:])
            try:
                if name[0] == "p":
                    return power_sum(k, self.nvars, self.field)
                return elementary_symmetric(k, self.nvars, self.field)
            except ValueError as exc:
                self.fail(str(exc), tok)
        self.fail("unknown identifier %r" % name, tok)


def parse_polynomial(text, nvars=None, allow_t=False, varnames=None):
    """Parse the expression grammar into a Polynomial.

    Variables default to x0..x{nvars-1}.  p_k and e_k expand to power sums
    and elementary symmetric polynomials in the declared variables.  't' is
    admitted only when allow_t is set; the result then has coefficients in
    Q(t) (polynomial in t by construction).
    """
    if varnames is None:
        if nvars is None:
            raise ValueError("either nvars or varnames is required")
        varnames = ["x%d" % i for i in range(nvars)]
    field = QQ_T if allow_t else QQ
    parser = _PolyParser(_tokenize(text), varnames, field, allow_t)
    poly = parser.expr()
    tok = parser.peek()
    if tok[0] != "end":
        parser.fail("trailing input", tok)
    return poly


def render_polynomial(poly, varnames=None):
    """Canonical text form; reparses to an equal Polynomial."""
    return poly.to_text(varnames)


def _uses_t(poly):
    return any(c.num.degree > 0 or c.den.degree > 0
               for c in poly.terms.values())


def _specialize(poly, tau):
    """Evaluate Q(t) coefficients at a rational tau, landing over Q."""
    return poly.map_coeffs(QQ, lambda c: c(tau))


# ---- Euler-geometry programs -----------------------------------------------
#
#   node := 'point' | 'Pn' '(' int ')'
#         | 'sum' '(' node ('*' uint)? (',' node ('*' uint)?)* ')'
#         | 'prod' '(' node ',' node ')'
#         | 'blowup' '(' node ',' node ',' int ')'


class _EulerParser(_TokenStream):
    def node(self):
        tok = self.take()
        if tok[0] != "ident":
            self.fail("expected a space construction", tok)
        name = tok[1]
        if name == "point":
            return EulerPolynomial.constant(1)
        if name == "Pn":
            self.expect("(")
            k, ktok = self.int_lit()
            self.expect(")")
            if k < 0:
                self.fail("projective dimension must be nonnegative", ktok)
            return euler_of_Pn(k)
        if name == "sum":
            self.expect("(")
            parts = [self.sum_arg()]
            while self.peek()[0] == ",":
                self.take()
                parts.append(self.sum_arg())
            self.expect(")")
            return euler_sum(parts)
        if name == "prod":
            self.expect("(")
            a = self.node()
            self.expect(",", "prod expects exactly 2 arguments")
            b = self.node()
            self.expect(")", "prod expects exactly 2 arguments")
            return euler_product(a, b)
        if name == "blowup":
            self.expect("(")
            x = self.node()
            self.expect(",", "blowup expects 3 arguments")
            y = self.node()
            self.expect(",", "blowup expects 3 arguments")
            r, rtok = self.int_lit()
            self.expect(")", "blowup expects 3 arguments")
            if r < 1:
                self.fail("exceptional fiber dimension must be positive",
                          rtok)
            return euler_blowup(x, y, r)
        self.fail("unknown construction %r" % name, tok)

    def sum_arg(self):
        part = self.node()
        if self.peek()[0] == "*":
            self.take()
            count, ctok = self.int_lit()
            if count < 0:
                self.fail("repetition count must be nonnegative", ctok)
            return part * count
        return part

    def int_lit(self):
        sign = 1
        tok = self.take()
        if tok[0] == "-":
            sign = -1
            tok = self.take()
        if tok[0] != "int":
            self.fail("expected an integer", tok)
        return sign * int(tok[1]), tok


def parse_euler_program(text) -> EulerPolynomial:
    """Evaluate an Euler-geometry program to its Euler polynomial."""
    parser = _EulerParser(_tokenize(text))
    value = parser.node()
    tok = parser.peek()
    if tok[0] != "end":
        parser.fail("trailing input", tok)
    return value


# ---- shared helpers --------------------------------------------------------


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(str(exc))


def _fraction_arg(text, flag):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError("%s expects a rational number such as 7/3" % flag)


def _is_prime(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:  # deterministic Miller-Rabin below 3.3e24
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _parse_primes(text):
    if text is None:
        return DEFAULT_PRIMES
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            p = int(part)
        except ValueError:
            raise CliError("--primes expects comma-separated integers")
        if not _is_prime(p):
            raise CliError("%d is not prime" % p)
        out.append(p)
    if not out:
        raise CliError("--primes needs at least one prime")
    return tuple(out)


def _read_points(path, nvars):
    """Projective points, one rational coordinate tuple per line."""
    pts = []
    for lineno, raw in enumerate(_read_text(path).splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        cleaned = line.strip("()[]").replace(",", " ")
        coords = []
        for chunk in cleaned.split():
            try:
                coords.append(Fraction(chunk))
            except (ValueError, ZeroDivisionError):
                raise CliError("%s line %d: %r is not a rational number"
                               % (path, lineno, chunk))
        if len(coords) != nvars:
            raise CliError("%s line %d: expected %d coordinates, got %d"
                           % (path, lineno, nvars, len(coords)))
        pts.append(tuple(coords))
    return pts


def _flatten(obj, prefix, out):
    if isinstance(obj, dict):
        for key, val in obj.items():
            _flatten(val, "%s.%s" % (prefix, key) if prefix else str(key),
                     out)
    elif isinstance(obj, (list, tuple)):
        for i, val in enumerate(obj):
            _flatten(val, "%s.%d" % (prefix, i), out)
    else:
        out.append((prefix, obj))


def _to_tsv(obj):
    cells = []
    _flatten(obj, "", cells)

    def text(v):
        if v is None:
            return ""
        if v is True:
            return "true"
        if v is False:
            return "false"
        return str(v)

    header = "\t".join(k for k, _ in cells)
    values = "\t".join(text(v) for _, v in cells)
    return header + "\n" + values + "\n"


def _emit(obj, args):
    if args.output == "tsv":
        sys.stdout.write(_to_tsv(obj))
    else:
        sys.stdout.write(json.dumps(obj, indent=2) + "\n")


# ---- subcommands -----------------------------------------------------------


def _cmd_hodge_smooth(args):
    h = smooth_hodge_numbers(args.deg)
    return {"h30": h.h30, "h21": h.h21, "h12": h.h12, "h03": h.h03}


def _draw_parameter(poly, generic_deg, rng, notices):
    for _ in range(24):
        tau = Fraction(rng.randint(1, 99), rng.randint(1, 12))
        f = _specialize(poly, tau)
        if f.total_degree() == generic_deg:
            return tau, f
        notices.append("redrew t: degree dropped at t = %s" % tau)
    raise CliError("no parameter value kept the degree after 24 draws")


def _nodes_once(f, args, primes):
    if args.rational:
        gb = buchberger(jacobian_ideal(f))
        degree = zero_dim_degree(gb)
        reduced = None
        if degree != NOT_ZERO_DIMENSIONAL and degree > 0:
            reduced = reducedness_probe(gb, rng=random.Random(args.seed))
        return {"mode": "rational", "degree": degree, "reduced": reduced}
    rep = node_count_modular(f, primes, seed=args.seed,
                             threads=args.threads)
    if not rep["agreement"]:
        raise CliError("working primes disagree; rerun with fresh --primes")
    return {"mode": "modular", "degree": rep["degree"],
            "reduced": rep["reduced"], "per_prime": rep["per_prime"]}


def _cmd_nodes(args):
    poly = parse_polynomial(_read_text(args.poly), nvars=args.vars,
                            allow_t=True)
    generic_deg = poly.total_degree()
    if generic_deg < 1:
        raise CliError("the polynomial is constant")
    primes = _parse_primes(args.primes)
    notices = []
    t_used = None
    if args.t is not None:
        if not _uses_t(poly):
            raise CliError("--t was given but the polynomial has no "
                           "parameter t")
        t_used = _fraction_arg(args.t, "--t")
        f = _specialize(poly, t_used)
        if f.total_degree() != generic_deg:
            notices.append("degree drops at t = %s; analyzing the special "
                           "member anyway" % t_used)
        run = _nodes_once(f, args, primes)
    elif _uses_t(poly):
        rng = random.Random(args.seed)
        run = None
        for attempt in range(3):
            t_used, f = _draw_parameter(poly, generic_deg, rng, notices)
            run = _nodes_once(f, args, primes)
            if run["degree"] != NOT_ZERO_DIMENSIONAL:
                break
            if attempt < 2:
                notices.append("redrew t: singular locus at t = %s is not "
                               "zero-dimensional" % t_used)
    else:
        run = _nodes_once(_specialize(poly, Fraction(0)), args, primes)

    degree, reduced = run["degree"], run["reduced"]
    if degree == NOT_ZERO_DIMENSIONAL:
        node_count = NOT_ZERO_DIMENSIONAL
    elif degree == 0:
        node_count = 0
    elif reduced:
        node_count = degree
    else:
        node_count = None
        notices.append("scheme is not certified reduced; the degree is "
                       "only an upper bound for the node count")
    out = {
        "degree": degree,
        "reduced": reduced,
        "node_count": node_count,
        "polynomial_degree": generic_deg,
        "mode": run["mode"],
    }
    if t_used is not None:
        out["t"] = str(t_used)
    if "per_prime" in run:
        out["per_prime"] = run["per_prime"]
    if notices:
        out["notices"] = notices
    return out


def _cmd_adjoint(args):
    f = parse_polynomial(_read_text(args.poly), nvars=5, allow_t=False)
    if args.sigma is not None:
        pts = _read_points(args.sigma, 5)
        rep = adjoint_rank_report(f, pts, args.pole, args.order)
        out = {"mode": "rational", "dimension": rep["kernel_dim"]}
        out.update(rep)
        return out
    rep = modular_adjoint_report(f, args.pole, args.order, seed=args.seed)
    if not rep["agreement"]:
        raise CliError("per-prime adjoint ranks disagree")
    out = {"mode": "modular", "dimension": rep["kernel_dim"]}
    out.update(rep)
    return out


def _euler_json(ep, extra=None):
    out = dict(extra or {})
    out.update(ep.to_json_dict())
    out["is_symmetric"] = ep.is_symmetric()
    out["text"] = repr(ep)
    return out


def _cmd_euler_program(args):
    if args.program is None:
        raise CliError("euler needs --program FILE or the nodal subcommand")
    ep = parse_euler_program(_read_text(args.program))
    return _euler_json(ep, {"kind": "program"})


def _cmd_euler_nodal(args):
    fn = euler_resolution if args.resolution else euler_nodal_threefold
    ep = fn(args.m, args.a, args.b)
    kind = "resolution" if args.resolution else "nodal"
    return _euler_json(ep, {"kind": kind, "m": args.m, "a": args.a,
                            "b": args.b})


def _cmd_mhs(args):
    return mhs_dims(args.m, args.a, args.b, h2X=args.h2).to_json_dict()


def _cmd_picard_fuchs(args):
    poly = parse_polynomial(_read_text(args.pencil), nvars=args.vars,
                            allow_t=True)
    pencil = Pencil.from_parameter_poly(poly)
    method = "symmetric" if args.symmetric else "auto"
    op = picard_fuchs(pencil, max_order=args.max_order, method=method,
                      seed=args.seed)
    out = op.to_json_dict()
    uni = {}
    for root, _mult in op.singular_points()["rational"]:
        uni[str(root)] = unipotency_class(
            indicial_exponents(op, root)).to_json_dict()
    uni[INFINITY] = unipotency_class(
        indicial_exponents(op, INFINITY)).to_json_dict()
    out["unipotency"] = uni
    out["meta"] = op.meta
    return out


# ---- argument parsing and dispatch ----------------------------------------


class _ArgumentParser(argparse.ArgumentParser):
    # usage errors are user errors: exit 1, not argparse's default 2
    def error(self, message):
        self.exit(1, "%s: error: %s\n" % (self.prog, message))


def _common(suppress=False):
    parent = argparse.ArgumentParser(add_help=False)

    def dflt(value):
        return argparse.SUPPRESS if suppress else value

    parent.add_argument("--output", choices=("json", "tsv"),
                        default=dflt("json"), help="report format")
    parent.add_argument("--seed", type=int, default=dflt(0),
                        help="seed for randomized probes")
    parent.add_argument("--threads", type=int, default=dflt(1),
                        help="parallelism bound for modular runs")
    return parent


def build_parser():
    common = _common()
    # nested subcommands would clobber already-parsed globals with their
    # defaults, so their copy of the options suppresses defaults instead
    nested = _common(suppress=True)

    parser = _ArgumentParser(
        prog="nodalhodge",
        description="Hodge-theoretic invariants of nodal hypersurfaces "
                    "in P^4, in exact arithmetic.")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    sub.required = True

    hodge = sub.add_parser("hodge", parents=[common],
                           help="Hodge numbers of smooth hypersurfaces")
    hsub = hodge.add_subparsers(dest="hodge_cmd",
                                parser_class=_ArgumentParser)
    hsub.required = True
    smooth = hsub.add_parser("smooth", parents=[nested],
                             help="middle-cohomology Hodge diamond")
    smooth.add_argument("--deg", type=int, required=True,
                        help="hypersurface degree")
    smooth.set_defaults(fn=_cmd_hodge_smooth)

    nodes = sub.add_parser("nodes", parents=[common],
                           help="degree and reducedness of the singular "
                                "scheme")
    nodes.add_argument("--poly", required=True, metavar="FILE",
                       help="polynomial source file")
    nodes.add_argument("--vars", type=int, required=True,
                       help="number of variables x0..x{N-1}")
    nodes.add_argument("--t", default=None,
                       help="parameter value for a pencil (default: random)")
    nodes.add_argument("--primes", default=None,
                       help="comma-separated working primes")
    nodes.add_argument("--rational", action="store_true",
                       help="exact arithmetic over Q instead of mod p")
    nodes.set_defaults(fn=_cmd_nodes)

    adjoint = sub.add_parser("adjoint", parents=[common],
                             help="rank of the adjoint vanishing conditions")
    adjoint.add_argument("--poly", required=True, metavar="FILE")
    adjoint.add_argument("--sigma", default=None, metavar="FILE",
                         help="node coordinates, one point per line "
                              "(omit to locate nodes mod p)")
    adjoint.add_argument("--pole", type=int, required=True,
                         help="pole order k; numerator degree is kd-5")
    adjoint.add_argument("--order", type=int, required=True,
                         help="vanishing multiplicity at each node")
    adjoint.set_defaults(fn=_cmd_adjoint)

    euler = sub.add_parser("euler", parents=[common],
                           help="generalized Euler polynomials")
    euler.add_argument("--program", default=None, metavar="FILE",
                       help="Euler-geometry program file")
    esub = euler.add_subparsers(dest="euler_cmd",
                                parser_class=_ArgumentParser)
    nodal = esub.add_parser("nodal", parents=[nested],
                            help="nodal threefold with m nodes")
    nodal.add_argument("--m", type=int, required=True, help="node count")
    nodal.add_argument("--a", type=int, required=True,
                       help="h^{3,0} of the smooth model")
    nodal.add_argument("--b", type=int, required=True,
                       help="h^{2,1} of the smooth model")
    nodal.add_argument("--resolution", action="store_true",
                       help="blow up the nodes instead")
    nodal.set_defaults(fn=_cmd_euler_nodal)
    euler.set_defaults(fn=_cmd_euler_program)

    mhs = sub.add_parser("mhs", parents=[common],
                         help="weight-graded dimensions of H^3")
    mhs.add_argument("--m", type=int, required=True, help="node count")
    mhs.add_argument("--a", type=int, required=True,
                     help="h^{3,0} of the smooth model")
    mhs.add_argument("--b", type=int, required=True,
                     help="h^{2,1} of the smooth model")
    mhs.add_argument("--h2", type=int, default=1,
                     help="assumed dim H^2 of the nodal threefold")
    mhs.set_defaults(fn=_cmd_mhs)

    pf = sub.add_parser("picard-fuchs", parents=[common],
                        help="differential operator of a pencil")
    pf.add_argument("--pencil", required=True, metavar="FILE",
                    help="polynomial in x0..x{N-1} and t, affine in t")
    pf.add_argument("--vars", type=int, required=True)
    pf.add_argument("--symmetric", action="store_true",
                    help="force the symmetric evaluation route")
    pf.add_argument("--max-order", type=int, default=None,
                    help="largest operator order to search")
    pf.set_defaults(fn=_cmd_picard_fuchs)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        out = args.fn(args)
        _emit(out, args)
    except ParseError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except NoOperatorFound as exc:
        sys.stderr.write("error: %s; raise --max-order or check the "
                         "pencil\n" % exc)
        return 1
    except (CliError, ValueError, OSError, ZeroDivisionError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 1
    except Exception as exc:  # noqa: BLE001 - boundary of the process
        sys.stderr.write("internal error: %s: %s\n"
                         % (type(exc).__name__, exc))
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
