"""Prompt template, reply parsing, and response-pattern classification."""

from .classifier import (
    PatternClassifier,
    ResponsePattern,
    classify_pattern,
    load_lexicon_file,
    normalize_for_matching,
)
from .parser import (
    IssueSource,
    LegalIssue,
    ParsedResponse,
    instantiate_response,
    parse_response,
)
from .summary import LAY_SUMMARY_INSTRUCTION, build_lay_summary_prompt
from .template import (
    ISSUES_HEADING,
    PROMPT_DELIMITER,
    PromptTemplate,
    SampleInteraction,
    build_template,
    parse_template_file,
    reformat_prompt,
)

__all__ = [
    "ISSUES_HEADING",
    "IssueSource",
    "LAY_SUMMARY_INSTRUCTION",
    "LegalIssue",
    "ParsedResponse",
    "PatternClassifier",
    "PROMPT_DELIMITER",
    "PromptTemplate",
    "ResponsePattern",
    "SampleInteraction",
    "build_lay_summary_prompt",
    "build_template",
    "classify_pattern",
    "instantiate_response",
    "load_lexicon_file",
    "normalize_for_matching",
    "parse_response",
    "parse_template_file",
    "reformat_prompt",
]
