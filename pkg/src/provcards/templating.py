"""Template rendering with slot substitution, conditionals, and span tracking.

Grammar:
  {name}                    scalar substitution
  {name|list:N}             first N items joined "a, b and c" style
  {name|plural:sing:plur}   word choice by numeric value (1 -> sing)
  {?flag body}              body rendered only when flag is truthy; nests

Every substitution records a span over the rendered output so a UI can
attach hover or linking behavior to the exact characters a slot produced.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class TemplateError(ValueError):
    """Malformed template grammar or a placeholder with no slot value."""

    def __init__(self, message: str, position: int | None = None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


@dataclass(frozen=True)
class Span:
    """Half-open [start, end) character range a slot produced in the output."""

    start: int
    end: int
    slot: str
    link_key: str | None = None


@dataclass(frozen=True)
class _Text:
    text: str


@dataclass(frozen=True)
class _Slot:
    name: str
    filter: str | None
    args: tuple[str, ...]
    position: int


@dataclass(frozen=True)
class _Cond:
    flag: str
    children: tuple[object, ...]
    position: int


def _parse_slot(inner: str, position: int) -> _Slot:
    name, _, filter_spec = inner.partition("|")
    if not _NAME_RE.fullmatch(name):
        raise TemplateError(f"bad placeholder name {name!r}", position)
    if not filter_spec:
        return _Slot(name, None, (), position)
    parts = filter_spec.split(":")
    filt, args = parts[0], tuple(parts[1:])
    if filt == "list":
        if len(args) != 1 or not args[0].isdigit() or int(args[0]) < 1:
            raise TemplateError("list filter needs a positive count", position)
    elif filt == "plural":
        if len(args) != 2:
            raise TemplateError("plural filter needs singular and plural forms", position)
    else:
        raise TemplateError(f"unknown filter {filt!r}", position)
    return _Slot(name, filt, args, position)


def _parse(template: str, i: int, in_conditional: bool) -> tuple[tuple[object, ...], int]:
    """Parse until end of input or the '}' closing the current conditional."""
    nodes: list[object] = []
    buf: list[str] = []

    def flush() -> None:
        if buf:
            nodes.append(_Text("".join(buf)))
            buf.clear()

    while i < len(template):
        ch = template[i]
        if ch == "}":
            if in_conditional:
                flush()
                return tuple(nodes), i
            raise TemplateError("unexpected '}'", i)
        if ch != "{":
            buf.append(ch)
            i += 1
            continue
        flush()
        opened = i
        if template.startswith("{?", i):
            m = _NAME_RE.match(template, i + 2)
            if not m:
                raise TemplateError("conditional needs a flag name", opened)
            j = m.end()
            if j < len(template) and template[j] == " ":
                children, close = _parse(template, j + 1, True)
            elif j < len(template) and template[j] == "}":
                children, close = (), j
            else:
                raise TemplateError("expected space after conditional flag", j)
            nodes.append(_Cond(m.group(), children, opened))
            i = close + 1
        else:
            close = template.find("}", i)
            if close == -1:
                raise TemplateError("unclosed placeholder", opened)
            nodes.append(_parse_slot(template[i + 1:close], opened))
            i = close + 1
    if in_conditional:
        raise TemplateError("unclosed conditional", i)
    flush()
    return tuple(nodes), i


@lru_cache(maxsize=256)
def _parse_template(template: str) -> tuple[object, ...]:
    nodes, _ = _parse(template, 0, False)
    return nodes


def _join_list(value: object, count: int, name: str) -> str:
    if isinstance(value, str) or not isinstance(value, Sequence):
        raise TemplateError(f"slot {name!r} is not a list")
    items = [str(v) for v in value[:count]]
    if not items:
        return ""
    if len(items) == 1:
        return items[0]
    return ", ".join(items[:-1]) + " and " + items[-1]


def render_template(
    template: str,
    slots: Mapping[str, object],
    links: Mapping[str, str] | None = None,
) -> tuple[str, list[Span]]:
    """Render template against slots; return output text and slot spans.

    links optionally maps slot names to link keys carried on their spans.
    Raises TemplateError for grammar problems or placeholders (including
    conditional flags) that slots does not define.
    """
    nodes = _parse_template(template)
    out: list[str] = []
    spans: list[Span] = []
    length = 0

    def emit(s: str) -> None:
        nonlocal length
        out.append(s)
        length += len(s)

    def lookup(name: str) -> object:
        if name not in slots:
            raise TemplateError(f"unresolved placeholder {name!r}")
        return slots[name]

    def walk(nodes: tuple[object, ...]) -> None:
        for node in nodes:
            if isinstance(node, _Text):
                emit(node.text)
            elif isinstance(node, _Slot):
                value = lookup(node.name)
                start = length
                if node.filter is None:
                    emit("" if value is None else str(value))
                elif node.filter == "list":
                    emit(_join_list(value, int(node.args[0]), node.name))
                else:
                    emit(node.args[0] if value == 1 else node.args[1])
                spans.append(Span(
                    start, length, node.name,
                    links.get(node.name) if links else None,
                ))
            else:
                assert isinstance(node, _Cond)
                if lookup(node.flag):
                    walk(node.children)

    walk(nodes)
    return "".join(out), spans
