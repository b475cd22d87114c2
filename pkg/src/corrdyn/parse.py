"""Expression, point and job-file parsing for the command line front end.

Expressions follow a small strict grammar with no implicit
multiplication:

    expr   := '-'? term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' natural)?
    atom   := integer | 'x' | 'y' | '(' expr ')'

The single optional leading minus is exactly what canonical printing can
emit, so parse-print-parse round-trips.  Rational arity additionally
allows one division at the top parenthesis level.  Job files are line oriented with
bracketed section headers and key = value entries; the schema is strict,
unknown keys and commands are errors.
"""

from .corr import build
from .errors import (
    MissingField,
    ParseError,
    UnknownCommand,
    WrongArity,
)
from .fields import parse_field_spec
from .points import ProjectivePoint
from .poly import BiPoly, Poly, RationalFunction

UNIVARIATE = "univariate"
BIVARIATE = "bivariate"
RATIONAL = "rational"


# ---------------------------------------------------------------------------
# expressions
# ---------------------------------------------------------------------------


class _Token:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind = kind
        self.text = text
        self.pos = pos


def _tokenize(text):
    toks = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(_Token("int", text[i:j], i))
            i = j
            continue
        if ch in "xy":
            toks.append(_Token("var", ch, i))
            i += 1
            continue
        if ch in "+-*^/()":
            toks.append(_Token(ch, ch, i))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r} at offset {i}", i)
    toks.append(_Token("end", "", n))
    return toks


class _ExprParser:
    """Recursive descent over the token list, building a bivariate
    polynomial; arity restrictions are enforced at the atoms."""

    def __init__(self, field, toks, allow_y):
        self.field = field
        self.toks = toks
        self.i = 0
        self.allow_y = allow_y

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expr(self):
        # a single leading '-' is allowed so canonical printing round-trips
        if self.peek().kind == "-":
            self.take()
            acc = -self.term()
        else:
            acc = self.term()
        while self.peek().kind in ("+", "-"):
            op = self.take()
            rhs = self.term()
            acc = acc + rhs if op.kind == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek().kind == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        base = self.atom()
        if self.peek().kind == "^":
            self.take()
            t = self.peek()
            if t.kind != "int":
                raise ParseError(f"expected exponent at offset {t.pos}", t.pos)
            self.take()
            return base ** int(t.text)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "int":
            return BiPoly.constant(self.field, int(t.text))
        if t.kind == "var":
            if t.text == "y" and not self.allow_y:
                raise WrongArity(
                    f"'y' not allowed in this context (offset {t.pos})", t.pos
                )
            if t.text == "x":
                return BiPoly.var_x(self.field)
            return BiPoly.var_y(self.field)
        if t.kind == "(":
            inner = self.expr()
            t2 = self.take()
            if t2.kind != ")":
                raise ParseError(f"expected ')' at offset {t2.pos}", t2.pos)
            return inner
        raise ParseError(
            f"expected integer, variable or '(' at offset {t.pos}", t.pos
        )


def _parse_to_bipoly(field, toks, allow_y):
    p = _ExprParser(field, toks, allow_y)
    out = p.expr()
    t = p.peek()
    if t.kind != "end":
        raise ParseError(f"unexpected {t.text!r} at offset {t.pos}", t.pos)
    return out


def _to_poly(bp, field):
    cols = bp.coeff_polys("y")
    return cols[0] if cols else Poly.zero(field)


def parse_expression(text, arity, field):
    """Parse text into a Poly, BiPoly or RationalFunction over field."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    toks = _tokenize(text)
    slashes = [t for t in toks if t.kind == "/"]
    if arity == BIVARIATE:
        if slashes:
            raise ParseError(
                f"'/' not allowed at offset {slashes[0].pos}", slashes[0].pos
            )
        return _parse_to_bipoly(field, toks, allow_y=True)
    if arity == UNIVARIATE:
        if slashes:
            raise ParseError(
                f"'/' not allowed at offset {slashes[0].pos}", slashes[0].pos
            )
        return _to_poly(_parse_to_bipoly(field, toks, allow_y=False), field)
    if arity != RATIONAL:
        raise ValueError(f"unknown arity {arity!r}")
    if len(slashes) > 1:
        t = slashes[1]
        raise ParseError(f"second '/' at offset {t.pos}", t.pos)
    if not slashes:
        num = _to_poly(_parse_to_bipoly(field, toks, allow_y=False), field)
        return RationalFunction(num, Poly.one(field))
    # split at the single division; it must sit at the top paren level
    cut = toks.index(slashes[0])
    depth = 0
    for t in toks[:cut]:
        if t.kind == "(":
            depth += 1
        elif t.kind == ")":
            depth -= 1
    if depth != 0:
        t = slashes[0]
        raise ParseError(
            f"'/' inside parentheses at offset {t.pos}", t.pos
        )
    left = toks[:cut] + [_Token("end", "", slashes[0].pos)]
    right = toks[cut + 1:]
    num = _to_poly(_parse_to_bipoly(field, left, allow_y=False), field)
    den = _to_poly(_parse_to_bipoly(field, right, allow_y=False), field)
    if den.is_zero:
        raise ParseError("zero denominator", slashes[0].pos)
    return RationalFunction(num, den)


# ---------------------------------------------------------------------------
# points
# ---------------------------------------------------------------------------


def _parse_int(text, what):
    s = text.strip()
    body = s[1:] if s.startswith("-") else s
    if not body.isdigit():
        raise ParseError(f"bad {what} {text!r}")
    return int(s)


def parse_point(field, text):
    """Parse "[a:b]" with integer coordinates into a projective point."""
    s = text.strip()
    if not (s.startswith("[") and s.endswith("]")) or ":" not in s:
        raise ParseError(f"bad point {text!r}")
    atxt, _, btxt = s[1:-1].partition(":")
    a = field.element(_parse_int(atxt, "coordinate"))
    b = field.element(_parse_int(btxt, "coordinate"))
    if b.is_zero:
        if a.is_zero:
            raise ParseError(f"degenerate point {text!r}")
        return ProjectivePoint.infinity(field)
    return ProjectivePoint.finite(field, a / b)


def parse_point_list(field, text):
    """Parse a comma separated list of points; points contain no commas."""
    parts = [p for p in text.split(",") if p.strip()]
    if not parts:
        raise ParseError(f"empty point list {text!r}")
    return [parse_point(field, p) for p in parts]


# ---------------------------------------------------------------------------
# job files
# ---------------------------------------------------------------------------

COMMAND_NAMES = (
    "graph", "complete-sets", "classify", "compose", "transpose", "sum",
    "td-apply", "td-matrix", "lin-finitary", "qtd-check", "almost-split",
    "finitary", "exceptional", "backward-kernel", "bounds", "height",
)

# per-command parameter schema; "rng" is accepted everywhere
_REQUIRED = {
    "graph": (),
    "complete-sets": ("seed",),
    "classify": ("S",),
    "compose": (),
    "transpose": (),
    "sum": (),
    "td-apply": ("g",),
    "td-matrix": ("S", "n"),
    "lin-finitary": ("S", "n"),
    "qtd-check": ("Q", "S", "radius"),
    "almost-split": ("S", "S2", "n"),
    "finitary": (),
    "exceptional": (),
    "backward-kernel": (),
    "bounds": (),
    "height": ("seed",),
}
_OPTIONAL = {
    "graph": ("K",),
    "complete-sets": ("max_ext", "max_size"),
    "classify": (),
    "compose": (),
    "transpose": (),
    "sum": (),
    "td-apply": (),
    "td-matrix": (),
    "lin-finitary": ("buffer",),
    "qtd-check": (),
    "almost-split": ("S3",),
    "finitary": ("M", "n", "max_ext", "max_size"),
    "exceptional": (),
    "backward-kernel": ("max_ext", "max_size"),
    "bounds": ("genus", "d"),
    "height": (),
}
_INT_KEYS = frozenset(
    ["n", "M", "radius", "K", "rng", "max_ext", "max_size", "buffer",
     "genus", "d"]
)
_STR_KEYS = frozenset(["seed", "S", "S2", "S3", "Q", "g"])


class Job:
    """A parsed, validated, re-runnable unit of work."""

    __slots__ = ("version", "field", "corr", "corr2", "command", "params",
                 "rng_seed", "echo")

    def __init__(self, version, field, corr, corr2, command, params,
                 rng_seed, echo):
        self.version = version
        self.field = field
        self.corr = corr
        self.corr2 = corr2
        self.command = command
        self.params = params
        self.rng_seed = rng_seed
        self.echo = echo


def _strip_comment(line):
    out = []
    quoted = False
    for ch in line:
        if ch == '"':
            quoted = not quoted
        if ch == "#" and not quoted:
            break
        out.append(ch)
    return "".join(out)


def _parse_value(raw, lineno):
    s = raw.strip()
    if s.startswith('"'):
        if not (len(s) >= 2 and s.endswith('"')):
            raise ParseError(f"unterminated string on line {lineno}")
        return s[1:-1]
    body = s[1:] if s.startswith("-") else s
    if body.isdigit():
        return int(s)
    raise ParseError(f"bad value {raw.strip()!r} on line {lineno}")


def _split_sections(text):
    """(version, {section: {key: value}}) from the line-oriented format."""
    version = None
    sections = {}
    current = None
    for lineno, rawline in enumerate(text.splitlines(), start=1):
        line = _strip_comment(rawline).strip()
        if not line:
            continue
        if line.startswith("["):
            close = line.find("]")
            if close < 0:
                raise ParseError(f"unterminated section header on line {lineno}")
            name = line[1:close].strip()
            if not name:
                raise ParseError(f"empty section name on line {lineno}")
            if name in sections:
                raise ParseError(f"duplicate section [{name}] on line {lineno}")
            sections[name] = {}
            current = name
            line = line[close + 1:].strip()
            if not line:
                continue
        if "=" not in line:
            raise ParseError(f"expected key = value on line {lineno}")
        key, _, raw = line.partition("=")
        key = key.strip()
        val = _parse_value(raw, lineno)
        if current is None:
            if key != "version":
                raise ParseError(
                    f"key {key!r} before any section on line {lineno}"
                )
            if version is not None:
                raise ParseError(f"duplicate version on line {lineno}")
            version = val
            continue
        if key in sections[current]:
            raise ParseError(f"duplicate key {key!r} on line {lineno}")
        sections[current][key] = val
    return version, sections


def _build_corr(field, keys, fkey, mapkey):
    has_F = fkey in keys
    has_f = mapkey in keys
    if has_F and has_f:
        raise ParseError(f"give {fkey} or {mapkey}, not both")
    if not (has_F or has_f):
        return None, None
    if has_F:
        text = keys[fkey]
        if not isinstance(text, str):
            raise ParseError(f"{fkey} must be a quoted expression")
        F = parse_expression(text, BIVARIATE, field)
        return build(field, F=F), {"F": F.to_str()}
    text = keys[mapkey]
    if not isinstance(text, str):
        raise ParseError(f"{mapkey} must be a quoted expression")
    f = parse_expression(text, RATIONAL, field)
    return build(field, f=f), {"f": f.to_str()}


def assemble_job(version, sections):
    """Validate raw sections and build the executable Job."""
    if version is None:
        raise MissingField("missing version = 1 header")
    if version != 1:
        raise ParseError(f"unsupported version {version!r}")
    known = {"field", "corr", "command"}
    for name in sections:
        if name not in known:
            raise ParseError(f"unknown section [{name}]")
    if "field" not in sections:
        raise MissingField("missing [field] section")
    if "corr" not in sections:
        raise MissingField("missing [corr] section")
    if "command" not in sections:
        raise MissingField("missing [command] section")

    fsec = sections["field"]
    for key in fsec:
        if key != "spec":
            raise ParseError(f"unknown key {key!r} in [field]")
    if "spec" not in fsec:
        raise MissingField("missing spec in [field]")
    if not isinstance(fsec["spec"], str):
        raise ParseError("field spec must be a quoted string")
    field = parse_field_spec(fsec["spec"])

    csec = sections["corr"]
    for key in csec:
        if key not in ("F", "f", "F2", "f2"):
            raise ParseError(f"unknown key {key!r} in [corr]")
    corr, corr_echo = _build_corr(field, csec, "F", "f")
    if corr is None:
        raise MissingField("missing F or f in [corr]")
    corr2, corr2_echo = _build_corr(field, csec, "F2", "f2")

    msec = dict(sections["command"])
    if "name" not in msec:
        raise MissingField("missing name in [command]")
    name = msec.pop("name")
    if not isinstance(name, str) or name not in COMMAND_NAMES:
        raise UnknownCommand(f"unknown command {name!r}")
    allowed = set(_REQUIRED[name]) | set(_OPTIONAL[name]) | {"rng"}
    for key in msec:
        if key not in allowed:
            raise ParseError(f"unknown key {key!r} for command {name!r}")
    for key in _REQUIRED[name]:
        if key not in msec:
            raise MissingField(f"command {name!r} needs {key}")
    params = {}
    for key, val in msec.items():
        if key in _INT_KEYS:
            if not isinstance(val, int):
                raise ParseError(f"{key} must be an integer")
        elif key in _STR_KEYS:
            if not isinstance(val, str):
                raise ParseError(f"{key} must be a quoted string")
        params[key] = val
    rng_seed = params.pop("rng", 0)

    echo = {
        "field": field.spec_string(),
        "corr": corr_echo,
        "command": name,
        "params": {k: params[k] for k in sorted(params)},
    }
    if corr2_echo is not None:
        echo["corr2"] = corr2_echo
    return Job(1, field, corr, corr2, name, params, rng_seed, echo)


def parse_job(text):
    """Parse and validate a job file into a Job."""
    version, sections = _split_sections(text)
    return assemble_job(version, sections)
