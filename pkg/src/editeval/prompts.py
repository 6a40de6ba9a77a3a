"""Prompt assembly for the three pipeline stages.

Templates live as data files under ``templates/`` so wording can change
without code changes. Builders are pure: same inputs, same prompt. All
prompts default to temperature 0 and a 4000-token output budget.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources

from .commands import EditCommand, serialize_command
from .grounding import BoundingBox
from .images import RasterImage, draw_set_of_marks

DEFAULT_TEMPERATURE = 0.0
DEFAULT_MAX_TOKENS = 4000

EDIT_ATTENTION_CLAUSE = (
    "Pay special attention to the visual cues specified by the bounding box "
    "drawn on the image."
)
REPLICATE_ATTENTION_CLAUSE = (
    "Pay special attention to the style and content in the bounding box "
    "drawn on the image."
)


@dataclass(frozen=True)
class PromptParams:
    temperature: float = DEFAULT_TEMPERATURE
    max_tokens: int = DEFAULT_MAX_TOKENS


@dataclass(frozen=True)
class Prompt:
    text: str
    image: RasterImage | None = None
    params: PromptParams = field(default_factory=PromptParams)


def _load_template(name: str) -> str:
    return (
        resources.files("editeval.templates").joinpath(name).read_text(encoding="utf-8")
    )


def _fill(template: str, slots: dict[str, str]) -> str:
    out = template
    for marker, value in slots.items():
        out = out.replace(marker, value)
    return out


def _fill_attention(template: str, clause: str | None) -> str:
    # the marker occupies a full line; absent clause removes the line
    if clause:
        return template.replace("<<ATTENTION>>", clause)
    return template.replace("<<ATTENTION>>\n", "")


def build_reformulation_prompt(request: str, command: EditCommand) -> Prompt:
    """Text-only prompt asking an LLM to rewrite a command as an instruction."""
    text = _fill(
        _load_template("reformulate.txt"),
        {"<<REQUEST>>": request, "<<COMMAND>>": serialize_command(command)},
    )
    return Prompt(text=text)


def build_edit_prompt(
    instruction: str, image: RasterImage, *, grounded: bool = True
) -> Prompt:
    """Multimodal editing prompt.

    With ``grounded=True`` the image is expected to carry the set-of-marks
    overlay and the text directs attention to it; with ``grounded=False``
    the attention clause is omitted (visual-grounding ablation).
    """
    template = _fill_attention(
        _load_template("edit.txt"), EDIT_ATTENTION_CLAUSE if grounded else None
    )
    text = _fill(template, {"<<INSTRUCTION>>": instruction})
    return Prompt(text=text, image=image)


def build_replication_prompt(
    image: RasterImage, box: BoundingBox | None = None
) -> Prompt:
    """Image-to-HTML replication prompt; a box adds the overlay and the
    style-and-content attention clause."""
    if box is not None:
        image = draw_set_of_marks(image, box)
        clause: str | None = REPLICATE_ATTENTION_CLAUSE
    else:
        clause = None
    text = _fill_attention(_load_template("replicate.txt"), clause)
    return Prompt(text=text, image=image)
