"""The output-steering prompt template and prompt reformatting.

A template has four blocks: contextual statements, the output pattern
(with the [REC] and [LIn] placeholders), tagged sample interactions,
and clarification statements.  Template files use named sections::

    @context
    ...free text...
    @pattern
    ...must contain [REC] once and the "Potential Legal Issues:" heading...
    @examples
    @user <minor|none|serious>
    ...user text...
    @model
    ...model text...
    @closing
    ...free text...

The template deliberately never asks the model for statute names or
references; exact citations come from the knowledge graph instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..errors import TemplateInvalid

INTERACTION_TAGS = ("minor", "none", "serious")

_FRAMING = {
    "minor": "A sample interaction for a prompt that potentially raises minor legal issues is shown:",
    "none": "A sample interaction for a prompt that does not raise legal issues is shown:",
    "serious": "A sample interaction for a prompt that is clearly illegal and asks for dangerous information:",
}

_EXAMPLES_PREAMBLE = "I will now provide you with some examples for user interaction with the model."

PROMPT_DELIMITER = "---"

ISSUES_HEADING = "Potential Legal Issues:"


@dataclass(frozen=True)
class SampleInteraction:
    user_text: str
    model_text: str
    tag: str


@dataclass(frozen=True)
class PromptTemplate:
    contextual_statements: str
    pattern_block: str
    sample_interactions: tuple[SampleInteraction, ...]
    clarification_statements: str

    def __post_init__(self):
        object.__setattr__(self, "sample_interactions", tuple(self.sample_interactions))
        if self.pattern_block.count("[REC]") != 1:
            raise TemplateInvalid("pattern block must contain [REC] exactly once")
        if ISSUES_HEADING not in self.pattern_block:
            raise TemplateInvalid(
                f"pattern block must contain the literal heading {ISSUES_HEADING!r}"
            )
        tags = {i.tag for i in self.sample_interactions}
        for tag in INTERACTION_TAGS:
            if tag not in tags:
                raise TemplateInvalid(f"missing a sample interaction tagged {tag!r}")
        for interaction in self.sample_interactions:
            if interaction.tag not in INTERACTION_TAGS:
                raise TemplateInvalid(f"unknown interaction tag {interaction.tag!r}")

    def render(self) -> str:
        """Deterministic full text of the template."""
        parts = [self.contextual_statements, self.pattern_block, _EXAMPLES_PREAMBLE]
        for interaction in self.sample_interactions:
            parts.append(
                f"{_FRAMING[interaction.tag]}\n"
                f"'User: {interaction.user_text}\n"
                f'Model: "{interaction.model_text}" \''
            )
        parts.append(self.clarification_statements)
        return "\n\n".join(parts)


def parse_template_file(text: str) -> PromptTemplate:
    sections: dict[str, list[str]] = {"context": [], "pattern": [], "closing": []}
    interactions: list[tuple[str, list[str], list[str]]] = []  # (tag, user, model)
    current: list[str] | None = None
    in_examples = False
    for number, line in enumerate(text.splitlines(), start=1):
        marker = line.strip()
        if marker in ("@context", "@pattern", "@closing"):
            in_examples = False
            current = sections[marker[1:]]
        elif marker == "@examples":
            in_examples = True
            current = None
        elif marker.startswith("@user"):
            if not in_examples:
                raise TemplateInvalid(f"line {number}: @user outside @examples")
            tag = marker[len("@user"):].strip()
            interactions.append((tag, [], []))
            current = interactions[-1][1]
        elif marker == "@model":
            if not interactions:
                raise TemplateInvalid(f"line {number}: @model before any @user")
            current = interactions[-1][2]
        elif current is not None:
            current.append(line)
        elif marker:
            raise TemplateInvalid(f"line {number}: content outside any section")

    samples = tuple(
        SampleInteraction("\n".join(u).strip(), "\n".join(m).strip(), tag)
        for tag, u, m in interactions
    )
    return PromptTemplate(
        contextual_statements="\n".join(sections["context"]).strip(),
        pattern_block="\n".join(sections["pattern"]).strip(),
        sample_interactions=samples,
        clarification_statements="\n".join(sections["closing"]).strip(),
    )


def build_template(source: str = "builtin") -> PromptTemplate:
    """Load the builtin template or parse a template file."""
    if source == "builtin":
        text = (
            resources.files("lexguard.prompting")
            .joinpath("data", "builtin_template.txt")
            .read_text("utf-8")
        )
    else:
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
    return parse_template_file(text)


def reformat_prompt(user_prompt: str, template: PromptTemplate) -> str:
    """Combine the template with the user's prompt, kept verbatim.

    The result is the rendered template, a delimiter line, then the user
    prompt unchanged apart from trailing-whitespace trimming.
    """
    prompt = user_prompt.rstrip()
    if not prompt:
        raise ValueError("user prompt is empty")
    return f"{template.render()}\n\n{PROMPT_DELIMITER}\n\n{prompt}"
