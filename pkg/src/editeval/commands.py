"""Edit-command grammar: parse, normalize, and serialize.

Commands are strings of the form ``action(component, initial state, final state)``.
Fields containing a comma or a double quote are written double-quoted with
internal quotes doubled, CSV-style. Unquoted legacy strings with extra commas
are accepted best-effort: the first and last top-level commas bound the
component and final state, everything between is the initial state.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from enum import Enum


class CommandError(ValueError):
    """Base error for command parsing failures."""


class UnknownAction(CommandError):
    """The leading word is not one of the eight known edit actions."""


class MalformedBody(CommandError):
    """Missing parentheses or fewer than three resolvable fields."""


class EditAction(Enum):
    ADD = "add"
    DELETE = "delete"
    COPY = "copy"
    MOVE = "move"
    REPLACE = "replace"
    SPLIT = "split"
    MERGE = "merge"
    MODIFY = "modify"


_ACTIONS = {a.value: a for a in EditAction}

_LEADING_WORD = re.compile(r"^\s*([^\s(]+)")


@dataclass(frozen=True)
class EditCommand:
    """A parsed edit command: an action plus three free-text fields."""

    action: EditAction
    component: str
    initial_state: str
    final_state: str

    @property
    def fields(self) -> tuple[str, str, str]:
        return (self.component, self.initial_state, self.final_state)


def _collapse(text: str) -> str:
    return " ".join(text.split())


def normalize_command(cmd: EditCommand) -> EditCommand:
    """Return the comparison form: fields trimmed, whitespace collapsed, lowercased."""
    return replace(
        cmd,
        component=_collapse(cmd.component).lower(),
        initial_state=_collapse(cmd.initial_state).lower(),
        final_state=_collapse(cmd.final_state).lower(),
    )


def _quote_field(field: str) -> str:
    if "," in field or '"' in field:
        return '"' + field.replace('"', '""') + '"'
    return field


def serialize_command(cmd: EditCommand) -> str:
    """Render the canonical command string (normalized, deterministic)."""
    norm = normalize_command(cmd)
    body = ", ".join(_quote_field(f) for f in norm.fields)
    return f"{norm.action.value}({body})"


def _scan_fields(body: str) -> tuple[list[str], list[int]]:
    """Split a command body on top-level commas, honoring double-quoted fields.

    Returns the fields and the positions of the separating commas. A field
    beginning with a quote that is not well-formed falls back to raw text up
    to the next comma, so messy model output still splits.
    """
    fields: list[str] = []
    commas: list[int] = []
    i = 0
    n = len(body)
    while True:
        # skip leading whitespace of the field
        start = i
        while i < n and body[i].isspace():
            i += 1
        if i < n and body[i] == '"':
            value, end = _read_quoted(body, i)
            if value is not None:
                # valid only if followed by whitespace then comma or end
                j = end
                while j < n and body[j].isspace():
                    j += 1
                if j >= n or body[j] == ",":
                    fields.append(value)
                    if j >= n:
                        return fields, commas
                    commas.append(j)
                    i = j + 1
                    continue
        # raw field: up to the next comma
        j = body.find(",", i)
        if j == -1:
            fields.append(body[start:].strip())
            return fields, commas
        fields.append(body[start:j].strip())
        commas.append(j)
        i = j + 1


def _read_quoted(body: str, start: int) -> tuple[str | None, int]:
    """Read a double-quoted field at ``start``; '""' is a literal quote.

    Returns (value, index-after-closing-quote), or (None, start) if no
    closing quote exists.
    """
    out: list[str] = []
    i = start + 1
    n = len(body)
    while i < n:
        ch = body[i]
        if ch == '"':
            if i + 1 < n and body[i + 1] == '"':
                out.append('"')
                i += 2
                continue
            return "".join(out), i + 1
        out.append(ch)
        i += 1
    return None, start


def parse_command(text: str) -> EditCommand:
    """Parse a command string into an :class:`EditCommand`.

    The action word is matched case-insensitively; field text keeps its case
    (use :func:`normalize_command` for comparisons).
    """
    if not text or not text.strip():
        raise MalformedBody("empty command text")
    m = _LEADING_WORD.match(text)
    word = m.group(1) if m else ""
    action = _ACTIONS.get(word.lower())
    if action is None:
        raise UnknownAction(f"unknown action {word!r}")

    open_idx = text.find("(")
    close_idx = text.rfind(")")
    if open_idx == -1 or close_idx < open_idx:
        raise MalformedBody(f"missing parenthesized body in {text!r}")
    if text[close_idx + 1 :].strip():
        raise MalformedBody(f"trailing text after body in {text!r}")
    if text[m.end() : open_idx].strip():
        raise MalformedBody(f"unexpected text before body in {text!r}")

    body = text[open_idx + 1 : close_idx]
    fields, commas = _scan_fields(body)
    if len(fields) == 3:
        component, initial_state, final_state = fields
    elif len(fields) > 3:
        # legacy fallback: first/last top-level commas bound the outer fields
        component = fields[0]
        final_state = fields[-1]
        initial_state = body[commas[0] + 1 : commas[-1]].strip()
    else:
        raise MalformedBody(
            f"expected 3 fields, found {len(fields)} in {body!r}"
        )
    return EditCommand(action, component, initial_state, final_state)
