"""Problem files.

A problem file is a sequence of ``;``-terminated statements; ``#`` starts a
comment.  Example::

    # expect mu_I=6
    ring x, y, z;
    icis: x^3 + y^3 - z^2;
    map: x, y, z^3 + x*z + y^2;
    option seed = 7;

Statements: ``ring``, ``target``, ``icis:``, ``map:``, ``ideal:``, ``q:``,
``params:``, ``unfold:`` and ``option key = value``.  Lines of the form
``# expect key=value`` are collected as expectations for corpus runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .parse import ExprParser, ParseError, Token, tokenize
from .ring import RingCtx, format_poly, local_ring

OPTION_KEYS = {"seed": int, "bound": int, "retries": int, "tmax": int, "jet": int, "germ_faithful": bool}
_LIST_KEYS = ("icis", "map", "ideal", "q", "unfold")
_EXPECT_RE = re.compile(r"^\s*#\s*expect\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(.*?)\s*$")


@dataclass(frozen=True)
class ProblemFile:
    ring_vars: tuple
    target_vars: tuple | None = None
    icis: tuple = ()
    map: tuple = ()
    ideal: tuple = ()
    q: tuple = ()
    params: tuple = ()
    unfold: tuple = ()
    options: tuple = ()  # sorted (key, value) pairs
    expectations: tuple = ()  # (key, value-text) pairs in file order

    @property
    def ring(self) -> RingCtx:
        return local_ring(list(self.ring_vars))

    @property
    def unfold_ring(self) -> RingCtx:
        return local_ring(list(self.ring_vars) + list(self.params))

    def option(self, key: str, default=None):
        return dict(self.options).get(key, default)

    def expect(self) -> dict:
        return dict(self.expectations)


def _split_statements(tokens: list[Token], text: str):
    stmts = []
    cur: list[Token] = []
    for tok in tokens:
        if tok.text == ";" and tok.kind == "punct":
            if not cur:
                raise ParseError("empty statement", tok.line, tok.col)
            stmts.append((cur, tok))
            cur = []
        else:
            cur.append(tok)
    if cur:
        last = cur[-1]
        raise ParseError("missing ';' at end of statement", last.line, last.col + len(last.text))
    return stmts


def _split_commas(tokens: list[Token]) -> list[list[Token]]:
    parts: list[list[Token]] = [[]]
    depth = 0
    for tok in tokens:
        if tok.text == "(":
            depth += 1
        elif tok.text == ")":
            depth -= 1
        if tok.text == "," and depth == 0:
            parts.append([])
        else:
            parts[-1].append(tok)
    return parts


def _names(tokens: list[Token], what: str) -> tuple:
    out = []
    expect_name = True
    for tok in tokens:
        if tok.text == ",":
            if expect_name:
                raise ParseError(f"expected a name in {what}", tok.line, tok.col)
            expect_name = True
            continue
        if tok.kind != "name":
            raise ParseError(f"expected a variable name in {what}, got {tok.text!r}", tok.line, tok.col)
        if tok.text in out:
            raise ParseError(f"duplicate variable {tok.text!r}", tok.line, tok.col)
        out.append(tok.text)
        expect_name = False
    return tuple(out)


def parse_problem(text: str) -> ProblemFile:
    tokens = tokenize(text, comments=True)
    stmts = _split_statements(tokens, text)
    seen: dict[str, Token] = {}
    ring_vars = None
    target = None
    params: tuple = ()
    options: dict = {}
    raw_lists: dict[str, tuple[list[Token], Token]] = {}

    for toks, end in stmts:
        head = toks[0]
        if head.kind != "name":
            raise ParseError(f"statement must start with a keyword, got {head.text!r}", head.line, head.col)
        kw = head.text
        body = toks[1:]
        if kw != "option":
            if kw in seen:
                raise ParseError(f"duplicate {kw!r} statement", head.line, head.col)
            seen[kw] = head
        if body and body[0].text == ":":
            body = body[1:]
        if kw == "ring":
            ring_vars = _names(body, "ring")
            if not ring_vars:
                raise ParseError("ring needs at least one variable", head.line, head.col)
        elif kw == "target":
            target = _names(body, "target")
        elif kw == "params":
            params = _names(body, "params")
        elif kw in _LIST_KEYS:
            raw_lists[kw] = (body, end)
        elif kw == "option":
            if len(body) < 3 or body[0].kind != "name" or body[1].text != "=":
                raise ParseError("expected 'option key = value'", head.line, head.col)
            key = body[0].text
            if key not in OPTION_KEYS:
                raise ParseError(f"unknown option {key!r}", body[0].line, body[0].col)
            if key in options:
                raise ParseError(f"duplicate option {key!r}", body[0].line, body[0].col)
            options[key] = _option_value(key, body[2:], body[1])
        else:
            raise ParseError(f"unknown statement {kw!r}", head.line, head.col)

    if ring_vars is None:
        raise ParseError("missing 'ring' statement", 1, 1)
    ring = local_ring(list(ring_vars))
    clash = set(params) & set(ring_vars)
    if clash:
        tok = seen["params"]
        raise ParseError(f"parameter names {sorted(clash)} clash with ring variables", tok.line, tok.col)
    if target is not None:
        clash = set(target) & (set(ring_vars) | set(params))
        if clash:
            tok = seen["target"]
            raise ParseError(f"target names {sorted(clash)} clash with source variables", tok.line, tok.col)

    lists: dict[str, tuple] = {}
    for kw, (body, end) in raw_lists.items():
        r = local_ring(list(ring_vars) + list(params)) if kw == "unfold" else ring
        lists[kw] = _parse_list(body, end, r, origin=kw != "q")

    if target is not None and "map" in lists and len(target) != len(lists["map"]):
        tok = seen["target"]
        raise ParseError(
            f"arity mismatch: {len(target)} target variables for {len(lists['map'])} map components",
            tok.line, tok.col,
        )
    if "unfold" in lists:
        if not params:
            tok = seen["unfold"]
            raise ParseError("'unfold' needs a 'params' statement", tok.line, tok.col)
        want = len(lists.get("map", ())) + len(lists.get("icis", ()))
        if len(lists["unfold"]) != want:
            tok = seen["unfold"]
            raise ParseError(
                f"arity mismatch: unfolding has {len(lists['unfold'])} components, expected {want} "
                f"(map components followed by icis equations)",
                tok.line, tok.col,
            )
    elif params:
        tok = seen["params"]
        raise ParseError("'params' without an 'unfold' statement", tok.line, tok.col)

    expectations = []
    for line in text.splitlines():
        m = _EXPECT_RE.match(line)
        if m:
            expectations.append((m.group(1), m.group(2)))

    return ProblemFile(
        ring_vars=ring_vars,
        target_vars=target,
        icis=lists.get("icis", ()),
        map=lists.get("map", ()),
        ideal=lists.get("ideal", ()),
        q=lists.get("q", ()),
        params=params,
        unfold=lists.get("unfold", ()),
        options=tuple(sorted(options.items())),
        expectations=tuple(expectations),
    )


def _option_value(key: str, toks: list[Token], eq: Token):
    if not toks:
        raise ParseError(f"missing value for option {key!r}", eq.line, eq.col)
    text = "".join(t.text for t in toks)
    kind = OPTION_KEYS[key]
    if kind is bool:
        if text.lower() in ("true", "yes", "1"):
            return True
        if text.lower() in ("false", "no", "0"):
            return False
        raise ParseError(f"option {key!r} expects true or false", toks[0].line, toks[0].col)
    if not re.fullmatch(r"-?\d+", text):
        raise ParseError(f"option {key!r} expects an integer", toks[0].line, toks[0].col)
    return int(text)


def _parse_list(body: list[Token], end: Token, ring: RingCtx, origin: bool) -> tuple:
    if not body:
        return ()
    out = []
    for part in _split_commas(body):
        if not part:
            raise ParseError("empty list entry", end.line, end.col)
        p = ExprParser(part, ring, end=(end.line, end.col)).parse()
        if origin and p.constant_term():
            raise ParseError(
                f"polynomial {format_poly(p)} has nonzero constant term; germs must vanish at the origin",
                part[0].line, part[0].col,
            )
        out.append(p)
    return tuple(out)


def format_problem(pf: ProblemFile) -> str:
    """Render ``pf`` in the file syntax; ``parse_problem`` inverts it."""
    lines = [f"# expect {k}={v}" for k, v in pf.expectations]
    lines.append(f"ring {', '.join(pf.ring_vars)};")
    if pf.target_vars is not None:
        lines.append(f"target {', '.join(pf.target_vars)};")
    if pf.params:
        lines.append(f"params: {', '.join(pf.params)};")
    for kw in _LIST_KEYS:
        polys = getattr(pf, kw)
        if polys:
            lines.append(f"{kw}: {', '.join(format_poly(p) for p in polys)};")
    for k, v in pf.options:
        val = ("true" if v else "false") if isinstance(v, bool) else str(v)
        lines.append(f"option {k} = {val};")
    return "\n".join(lines) + "\n"
