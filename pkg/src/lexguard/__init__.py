"""lexguard: legal-citation guardrails for LLM answers.

An intermediary layer between a user and any LLM backend.  It asks the
backend for its normal answer, re-engineers the prompt to surface legal
issues, resolves each issue to exact legislation fragments stored in a
legal knowledge graph, and returns the original answer enriched with
citations and lay summaries.
"""

__version__ = "0.1.0"
