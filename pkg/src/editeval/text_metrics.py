"""Command-generation metrics: exact match, word-overlap F1, ROUGE-L, field accuracy.

Corpus numbers are macro-averages over pairs. The F1/ROUGE-L string form of a
command is its canonical serialization, so delimiter quoting cannot skew
tokenization between prediction and gold.
"""

from __future__ import annotations

import string
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .commands import EditCommand, normalize_command, serialize_command


class EmptyCorpus(ValueError):
    """Raised when a corpus-level metric receives no pairs."""


def tokenize(text: str) -> list[str]:
    """Lowercase, split on whitespace, strip leading/trailing punctuation per token."""
    out = []
    for raw in text.lower().split():
        tok = raw.strip(string.punctuation)
        if tok:
            out.append(tok)
    return out


def exact_match(pred: EditCommand, gold: EditCommand) -> bool:
    """True iff the two commands are field-wise equal after normalization."""
    return normalize_command(pred) == normalize_command(gold)


def _f1(m: float, n_pred: int, n_gold: int) -> float:
    if n_pred == 0 and n_gold == 0:
        return 1.0
    if n_pred == 0 or n_gold == 0 or m == 0:
        return 0.0
    p = m / n_pred
    r = m / n_gold
    return 2 * p * r / (p + r)


def word_overlap_f1(pred: Sequence[str], gold: Sequence[str]) -> float:
    """F1 of the multiset token overlap. Both empty counts as 1.0."""
    m = sum((Counter(pred) & Counter(gold)).values())
    return _f1(m, len(pred), len(gold))


def lcs_length(a: Sequence[str], b: Sequence[str]) -> int:
    """Length of a longest common subsequence, O(len(a)*len(b)) time, O(min) space."""
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                cur.append(prev[j - 1] + 1)
            else:
                cur.append(max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(pred: Sequence[str], gold: Sequence[str]) -> float:
    """LCS-based F1 between token sequences. Both empty counts as 1.0."""
    return _f1(lcs_length(pred, gold), len(pred), len(gold))


def field_accuracy(
    pairs: Sequence[tuple[EditCommand, EditCommand]],
) -> tuple[float, float]:
    """Percentage of pairs with matching normalized action / component fields."""
    if not pairs:
        raise EmptyCorpus("field_accuracy needs at least one pair")
    action_hits = 0
    component_hits = 0
    for pred, gold in pairs:
        np_, ng = normalize_command(pred), normalize_command(gold)
        if np_.action == ng.action:
            action_hits += 1
        if np_.component == ng.component:
            component_hits += 1
    n = len(pairs)
    return 100.0 * action_hits / n, 100.0 * component_hits / n


@dataclass(frozen=True)
class CommandMetricsReport:
    exact_match_pct: float
    word_overlap_f1: float
    rouge_l: float
    action_pct: float
    component_pct: float
    n: int

    def to_dict(self) -> dict:
        return {
            "exact_match_pct": self.exact_match_pct,
            "word_overlap_f1": self.word_overlap_f1,
            "rouge_l": self.rouge_l,
            "action_pct": self.action_pct,
            "component_pct": self.component_pct,
            "n": self.n,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CommandMetricsReport":
        return cls(
            exact_match_pct=d["exact_match_pct"],
            word_overlap_f1=d["word_overlap_f1"],
            rouge_l=d["rouge_l"],
            action_pct=d["action_pct"],
            component_pct=d["component_pct"],
            n=d["n"],
        )


def corpus_command_report(
    pairs: Iterable[tuple[EditCommand, EditCommand]],
) -> CommandMetricsReport:
    """Aggregate per-pair metrics over a corpus of (pred, gold) commands."""
    pairs = list(pairs)
    if not pairs:
        raise EmptyCorpus("corpus_command_report needs at least one pair")
    em = 0
    f1_sum = 0.0
    rouge_sum = 0.0
    for pred, gold in pairs:
        if exact_match(pred, gold):
            em += 1
        pt = tokenize(serialize_command(pred))
        gt = tokenize(serialize_command(gold))
        f1_sum += word_overlap_f1(pt, gt)
        rouge_sum += rouge_l(pt, gt)
    action_pct, component_pct = field_accuracy(pairs)
    n = len(pairs)
    return CommandMetricsReport(
        exact_match_pct=100.0 * em / n,
        word_overlap_f1=f1_sum / n,
        rouge_l=rouge_sum / n,
        action_pct=action_pct,
        component_pct=component_pct,
        n=n,
    )
