"""CSS property-value pair extraction and set IoU.

Pairs come from two places: rules inside ``<style>`` blocks, scoped by their
selector text, and ``style="..."`` attributes, scoped by the literal string
``inline``. Properties and values are lowercased and whitespace-collapsed;
unparseable declarations are skipped and counted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

INLINE_SCOPE = "inline"

_COMMENT = re.compile(r"/\*.*?\*/", re.S)
_RULE = re.compile(r"([^{}]+)\{([^{}]*)\}")


@dataclass(frozen=True)
class CssPairSet:
    """Normalized set of (scope, property, value) entries."""

    entries: frozenset[tuple[str, str, str]]
    warning_count: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.entries)


def _collapse(text: str) -> str:
    return " ".join(text.split())


def _parse_declarations(
    block: str, scope: str, entries: set[tuple[str, str, str]]
) -> int:
    """Add ``prop: value`` declarations from a block; returns skip count."""
    skipped = 0
    for decl in block.split(";"):
        if not decl.strip():
            continue
        prop, sep, value = decl.partition(":")
        prop = _collapse(prop).lower()
        value = _collapse(value).lower()
        if not sep or not prop or not value:
            skipped += 1
            continue
        entries.add((scope, prop, value))
    return skipped


class _CssCollector(HTMLParser):
    """Collects raw <style> contents and style attribute values."""

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.style_blocks: list[str] = []
        self.inline_styles: list[str] = []
        self._in_style = 0

    def handle_starttag(self, tag, attrs):
        if tag.lower() == "style":
            self._in_style += 1
        for name, value in attrs:
            if name.lower() == "style" and value:
                self.inline_styles.append(value)

    def handle_startendtag(self, tag, attrs):
        for name, value in attrs:
            if name.lower() == "style" and value:
                self.inline_styles.append(value)

    def handle_endtag(self, tag):
        if tag.lower() == "style" and self._in_style:
            self._in_style -= 1

    def handle_data(self, data):
        if self._in_style:
            self.style_blocks.append(data)


def extract_css_pairs(html: str, *, scoped: bool = True) -> CssPairSet:
    """Extract the normalized CSS pair set of a document.

    With ``scoped=False`` the selector/inline scope is erased, pooling all
    property-value pairs globally (for sensitivity analysis).
    """
    collector = _CssCollector()
    collector.feed(html)
    collector.close()

    entries: set[tuple[str, str, str]] = set()
    warnings = 0
    for attr_value in collector.inline_styles:
        warnings += _parse_declarations(attr_value, INLINE_SCOPE, entries)
    for block in collector.style_blocks:
        text = _COMMENT.sub(" ", block)
        matched_any = False
        for m in _RULE.finditer(text):
            matched_any = True
            scope = _collapse(m.group(1))
            warnings += _parse_declarations(m.group(2), scope, entries)
        if not matched_any and text.strip():
            warnings += 1
    if not scoped:
        entries = {("", prop, value) for _, prop, value in entries}
    return CssPairSet(entries=frozenset(entries), warning_count=warnings)


def css_iou(a: CssPairSet, b: CssPairSet) -> float:
    """Intersection-over-union of two pair sets; 1.0 when both are empty."""
    union = a.entries | b.entries
    if not union:
        return 1.0
    return len(a.entries & b.entries) / len(union)
