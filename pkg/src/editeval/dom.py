"""Ordered labeled DOM trees extracted from (possibly malformed) HTML.

The parser is error-recovering: unclosed tags are auto-closed, stray end tags
are dropped, and common sibling tags (``li``, ``p``, table cells, ...) close
themselves the way browsers do. Element labels are lowercase tag names; text
nodes carry the label ``#text`` with their content stored separately so that
structural comparisons see structure, not wording.
"""

from __future__ import annotations

import html as html_mod
from dataclasses import dataclass, field
from html.parser import HTMLParser


class EmptyDocument(ValueError):
    """The input contained no element at all."""


VOID_ELEMENTS = frozenset(
    "area base br col embed hr img input link meta param source track wbr".split()
)

RAWTEXT_ELEMENTS = frozenset(["script", "style"])

# opening the key tag implicitly closes any of the value tags on the stack top
_CLOSE_ON_OPEN = {
    "li": {"li"},
    "dt": {"dt", "dd"},
    "dd": {"dt", "dd"},
    "td": {"td", "th"},
    "th": {"td", "th"},
    "tr": {"tr", "td", "th"},
    "tbody": {"tbody", "thead", "tfoot", "tr", "td", "th"},
    "thead": {"tbody", "thead", "tfoot", "tr", "td", "th"},
    "tfoot": {"tbody", "thead", "tfoot", "tr", "td", "th"},
    "option": {"option"},
    "optgroup": {"option", "optgroup"},
}

# block-level starts that implicitly close an open paragraph
_CLOSES_P = frozenset(
    (
        "address article aside blockquote details dialog div dl fieldset "
        "figcaption figure footer form h1 h2 h3 h4 h5 h6 header hr main menu "
        "nav ol p pre section table ul"
    ).split()
)


@dataclass
class DomNode:
    """One tree node: an element (lowercase tag) or a ``#text`` node."""

    label: str
    children: list["DomNode"] = field(default_factory=list)
    attrs: list[tuple[str, str | None]] = field(default_factory=list)
    text: str = ""

    def is_text(self) -> bool:
        return self.label == "#text"

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def signature(self) -> str:
        """Compact structure-only rendering, e.g. ``div(p(#text))``."""
        if not self.children:
            return self.label
        inner = ", ".join(c.signature() for c in self.children)
        return f"{self.label}({inner})"


@dataclass
class DomTree:
    root: DomNode

    def size(self) -> int:
        return self.root.size()

    def signature(self) -> str:
        return self.root.signature()


class _TreeBuilder(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.top_level: list[DomNode] = []
        self.stack: list[DomNode] = []
        self.saw_element = False

    def _append(self, node: DomNode) -> None:
        target = self.stack[-1].children if self.stack else self.top_level
        if (
            node.is_text()
            and target
            and target[-1].is_text()
        ):
            target[-1].text += node.text
        else:
            target.append(node)

    def _implied_closes(self, tag: str) -> None:
        while self.stack:
            top = self.stack[-1].label
            if top in _CLOSE_ON_OPEN.get(tag, ()):  # sibling-style auto close
                self.stack.pop()
            elif top == "p" and tag in _CLOSES_P:
                self.stack.pop()
            else:
                return

    def handle_starttag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        tag = tag.lower()
        self.saw_element = True
        self._implied_closes(tag)
        node = DomNode(tag, attrs=list(attrs))
        self._append(node)
        if tag not in VOID_ELEMENTS:
            self.stack.append(node)

    def handle_startendtag(self, tag: str, attrs: list[tuple[str, str | None]]) -> None:
        tag = tag.lower()
        self.saw_element = True
        self._implied_closes(tag)
        self._append(DomNode(tag, attrs=list(attrs)))

    def handle_endtag(self, tag: str) -> None:
        tag = tag.lower()
        if tag in VOID_ELEMENTS:
            return
        for i in range(len(self.stack) - 1, -1, -1):
            if self.stack[i].label == tag:
                del self.stack[i:]
                return
        # unmatched end tag: dropped

    def handle_data(self, data: str) -> None:
        if self.stack and self.stack[-1].label == "script":
            return
        if not data.strip():
            return
        self._append(DomNode("#text", text=data))

    # comments, doctype, processing instructions: dropped
    def handle_comment(self, data: str) -> None:
        pass

    def handle_decl(self, decl: str) -> None:
        pass

    def handle_pi(self, data: str) -> None:
        pass


def parse_html(text: str) -> DomTree:
    """Parse HTML into a :class:`DomTree`, recovering from malformed markup.

    A document with a single top-level element uses it as the root; multiple
    top-level nodes are wrapped in a synthetic ``#document`` node.
    """
    builder = _TreeBuilder()
    builder.feed(text)
    builder.close()
    if not builder.saw_element:
        raise EmptyDocument("no element found")
    top = builder.top_level
    if len(top) == 1 and not top[0].is_text():
        return DomTree(top[0])
    return DomTree(DomNode("#document", children=top))


def _emit(node: DomNode, out: list[str], raw_text: bool) -> None:
    if node.is_text():
        out.append(node.text if raw_text else html_mod.escape(node.text, quote=False))
        return
    if node.label == "#document":
        for child in node.children:
            _emit(child, out, raw_text=False)
        return
    parts = [f"<{node.label}"]
    for name, value in node.attrs:
        if value is None:
            parts.append(f" {name}")
        else:
            parts.append(f' {name}="{html_mod.escape(value, quote=True)}"')
    parts.append(">")
    out.append("".join(parts))
    if node.label in VOID_ELEMENTS:
        return
    child_raw = node.label in RAWTEXT_ELEMENTS
    for child in node.children:
        _emit(child, out, raw_text=child_raw)
    out.append(f"</{node.label}>")


def serialize_html(tree: DomTree) -> str:
    """Render a tree back to HTML text; ``parse_html`` of the result rebuilds it."""
    out: list[str] = []
    _emit(tree.root, out, raw_text=False)
    return "".join(out)
