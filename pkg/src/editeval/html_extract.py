"""Pull an HTML document out of a chatty model response.

Models wrap output in prose and code fences; this strips both. Candidates
are tried in order: each fenced code block, the span from the first ``<html``
or ``<!doctype`` to the last ``</html>``, then the whole response. The first
candidate that actually contains markup wins, which keeps the function
idempotent.
"""

from __future__ import annotations

import re

from .dom import EmptyDocument, parse_html


class NoHtmlFound(ValueError):
    """The response contains no recognizable HTML."""


_FENCE = re.compile(r"```[^\n`]*\n(.*?)```", re.S)
_DOC_START = re.compile(r"<!doctype|<html", re.I)
_DOC_END = re.compile(r"</html\s*>", re.I)


def _is_html(text: str) -> bool:
    try:
        parse_html(text)
        return True
    except EmptyDocument:
        return False


def extract_html(response: str) -> str:
    """Return the HTML document embedded in ``response``."""
    candidates: list[str] = []
    for m in _FENCE.finditer(response):
        candidates.append(m.group(1).strip())

    start = _DOC_START.search(response)
    if start:
        ends = list(_DOC_END.finditer(response))
        if ends:
            candidates.append(response[start.start() : ends[-1].end()].strip())
        else:
            candidates.append(response[start.start() :].strip())

    candidates.append(response.strip())

    for candidate in candidates:
        if candidate and _is_html(candidate):
            return candidate
    raise NoHtmlFound("response contains no HTML document")
