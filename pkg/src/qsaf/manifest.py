"""Text manifests describing an architecture and what to do with it.

A manifest is line oriented. ``#`` starts a comment. Statements:

    name <identifier>
    version <integer>
    level <1..5>
    component <id> = <PrimitiveName>(key=value, ...)
    wire <id>.<port> -> <id>.<port>
    contract {<qubit>, <qubit>, ...}
    run simulate key=value ...
    run minimize key=value ...

Values are integers, floats, booleans (true/false), quoted strings, and
(nested) lists. Wires and parameters are recorded as written; structural
judgement is left to ``ArchitectureGraph.validate`` so that a whole file
is diagnosed in one pass. Rendering a parsed manifest and parsing it again
reproduces the same object.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .catalog import find_primitive, get_primitive
from .composition import (AbstractionLevel, ArchitectureGraph,
                          ComponentInstance, OPTIMIZER_NAME)
from .errors import (CompositionError, LevelViolationError, ManifestError,
                     UnknownPrimitiveError)

RUN_VERBS = ("simulate", "minimize")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_NUMBER = re.compile(r"[+-]?(\d+\.\d*([eE][+-]?\d+)?"
                     r"|\.\d+([eE][+-]?\d+)?"
                     r"|\d+([eE][+-]?\d+)?)")


@dataclass(frozen=True)
class RunDirective:
    """One ``run`` line: what to execute and with which options."""

    verb: str
    options: dict
    line: int = field(default=0, compare=False)


@dataclass
class Manifest:
    """Parsed manifest: the graph plus its run directives."""

    name: str
    version: int
    graph: ArchitectureGraph
    directives: tuple


class _Cursor:
    """Character cursor over one logical line, tracking the column."""

    def __init__(self, text: str, line: int, col_base: int = 1):
        self.text = text
        self.pos = 0
        self.line = line
        self.col_base = col_base

    def err(self, message: str):
        raise ManifestError(message, self.line, self.col_base + self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def done(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, token: str):
        self.skip_ws()
        if not self.text.startswith(token, self.pos):
            self.err(f"expected {token!r}")
        self.pos += len(token)

    def ident(self) -> str:
        self.skip_ws()
        m = _IDENT.match(self.text, self.pos)
        if not m:
            self.err("expected a name")
        self.pos = m.end()
        return m.group()

    def value(self):
        ch = self.peek()
        if ch == "":
            self.err("expected a value")
        if ch == "[":
            return self._list()
        if ch in "\"'":
            return self._string(ch)
        m = _NUMBER.match(self.text, self.pos)
        if m:
            raw = m.group()
            self.pos = m.end()
            if re.fullmatch(r"[+-]?\d+", raw):
                return int(raw)
            return float(raw)
        word = _IDENT.match(self.text, self.pos)
        if word and word.group() in ("true", "false"):
            self.pos = word.end()
            return word.group() == "true"
        self.err("expected a number, string, list, or true/false")

    def _list(self):
        self.take("[")
        items = []
        if self.peek() == "]":
            self.take("]")
            return items
        while True:
            items.append(self.value())
            ch = self.peek()
            if ch == ",":
                self.take(",")
            elif ch == "]":
                self.take("]")
                return items
            else:
                self.err("expected ',' or ']' in list")

    def _string(self, quote: str):
        self.take(quote)
        end = self.text.find(quote, self.pos)
        if end < 0:
            self.err("unterminated string")
        raw = self.text[self.pos:end]
        self.pos = end + 1
        return raw

    def kwargs(self, closer: str | None = None) -> dict:
        """key=value pairs separated by commas (or just whitespace)."""
        out = {}
        while True:
            if closer is not None and self.peek() == closer:
                self.take(closer)
                return out
            if closer is None and self.done():
                return out
            key = self.ident()
            if key in out:
                self.err(f"duplicate option {key!r}")
            self.take("=")
            out[key] = self.value()
            if self.peek() == ",":
                self.take(",")


def _strip_comment(raw: str) -> str:
    quote = None
    for i, ch in enumerate(raw):
        if quote:
            if ch == quote:
                quote = None
        elif ch in "\"'":
            quote = ch
        elif ch == "#":
            return raw[:i]
    return raw


def parse_manifest(text: str) -> Manifest:
    """Parse manifest text into a graph plus run directives."""
    graph = ArchitectureGraph()
    directives = []
    name = "architecture"
    version = 1
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        offset = len(raw) - len(raw.lstrip()) + len(head) + 2
        cur = _Cursor(rest, lineno, col_base=offset)
        if head == "name":
            name = cur.ident()
            _expect_end(cur)
        elif head == "version":
            version = _int_only(cur, "version")
        elif head == "level":
            level = _int_only(cur, "level")
            if level not in AbstractionLevel.ALL:
                raise ManifestError(f"no abstraction level {level}", lineno)
            graph.level = level
        elif head == "component":
            _parse_component(graph, cur)
        elif head == "wire":
            _parse_wire(graph, cur)
        elif head == "contract":
            _parse_contract(graph, cur)
        elif head == "run":
            directives.append(_parse_run(cur))
        else:
            raise ManifestError(f"unknown statement {head!r}", lineno)
    graph.name = name
    return Manifest(name, version, graph, tuple(directives))


def _expect_end(cur: _Cursor):
    if not cur.done():
        cur.err("unexpected trailing text")


def _int_only(cur: _Cursor, what: str) -> int:
    value = cur.value()
    if not isinstance(value, int) or isinstance(value, bool):
        cur.err(f"{what} must be an integer")
    _expect_end(cur)
    return value


def _parse_component(graph: ArchitectureGraph, cur: _Cursor):
    instance_id = cur.ident()
    cur.take("=")
    type_name = cur.ident()
    cur.take("(")
    params = cur.kwargs(closer=")")
    _expect_end(cur)
    level = params.pop("level", None)
    if level is not None and \
            (isinstance(level, bool) or not isinstance(level, int)):
        cur.err("level must be an integer")
    if type_name == OPTIMIZER_NAME:
        primitive_id = None
    else:
        try:
            primitive_id = find_primitive(type_name).id
        except UnknownPrimitiveError as exc:
            raise UnknownPrimitiveError(
                f"line {cur.line}: {exc}") from None
    try:
        instance = ComponentInstance(instance_id, primitive_id, params,
                                     level)
        graph.add_component(instance, check=False)
    except (CompositionError, LevelViolationError) as exc:
        raise ManifestError(str(exc), cur.line) from None


def _parse_wire(graph: ArchitectureGraph, cur: _Cursor):
    src_inst = cur.ident()
    cur.take(".")
    src_port = cur.ident()
    cur.take("->")
    dst_inst = cur.ident()
    cur.take(".")
    dst_port = cur.ident()
    _expect_end(cur)
    graph.record_wire(f"{src_inst}.{src_port}", f"{dst_inst}.{dst_port}")


def _parse_contract(graph: ArchitectureGraph, cur: _Cursor):
    cur.take("{")
    qubits = []
    while True:
        value = cur.value()
        if not isinstance(value, int) or isinstance(value, bool) \
                or value < 0:
            cur.err("contracts list nonnegative qubit indices")
        qubits.append(value)
        if cur.peek() == ",":
            cur.take(",")
        elif cur.peek() == "}":
            cur.take("}")
            break
        else:
            cur.err("expected ',' or '}' in contract")
    _expect_end(cur)
    try:
        graph.add_contract(qubits)
    except CompositionError as exc:
        raise ManifestError(str(exc), cur.line) from None


def _parse_run(cur: _Cursor) -> RunDirective:
    verb = cur.ident()
    if verb not in RUN_VERBS:
        cur.err(f"run verb must be one of {', '.join(RUN_VERBS)}")
    options = cur.kwargs()
    return RunDirective(verb, options, cur.line)


# rendering


def _render_value(value, line_hint: int = 0) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, str):
        if '"' in value or "\n" in value:
            raise ManifestError(
                f"string {value!r} cannot be rendered", line_hint)
        return f'"{value}"'
    if isinstance(value, (list, tuple)):
        inner = ", ".join(_render_value(v, line_hint) for v in value)
        return f"[{inner}]"
    raise ManifestError(f"value {value!r} cannot be rendered", line_hint)


def _render_kwargs(params: dict) -> str:
    return ", ".join(f"{k}={_render_value(v)}" for k, v in params.items())


def render_manifest(manifest: Manifest) -> str:
    """Canonical text for a manifest; parsing it again round-trips."""
    graph = manifest.graph
    lines = [f"name {manifest.name}",
             f"version {manifest.version}",
             f"level {graph.level}",
             ""]
    for inst in graph.components.values():
        params = dict(inst.params)
        if inst.is_optimizer:
            default_level = AbstractionLevel.ALGORITHM
        else:
            default_level = get_primitive(inst.primitive_id).default_level
        if inst.level != default_level:
            params["level"] = inst.level
        lines.append(f"component {inst.instance_id} = "
                     f"{inst.display_name}({_render_kwargs(params)})")
    if graph.wires:
        lines.append("")
        lines += [f"wire {w}" for w in graph.wires]
    if graph.contracts:
        lines.append("")
        for contract in graph.contracts:
            body = ", ".join(str(q) for q in sorted(contract))
            lines.append("contract {" + body + "}")
    if manifest.directives:
        lines.append("")
        for directive in manifest.directives:
            opts = " ".join(f"{k}={_render_value(v)}"
                            for k, v in directive.options.items())
            lines.append(f"run {directive.verb} {opts}".rstrip())
    return "\n".join(lines) + "\n"
