"""Exception types shared across the package."""


class LexguardError(Exception):
    """Base class for all lexguard errors."""


# --- knowledge graph ---------------------------------------------------------

class MalformedDocument(LexguardError):
    """The document bytes could not be decoded or parsed at all."""


class SchemaViolation(LexguardError):
    """The document parsed but violates the ingestion schema."""


class ConflictingFragment(LexguardError):
    """A fragment id is already stored with different content."""


class FragmentNotFound(LexguardError):
    def __init__(self, fragment_id):
        super().__init__(f"fragment not found: {fragment_id}")
        self.fragment_id = fragment_id


# --- search ------------------------------------------------------------------

class QuerySyntaxError(LexguardError):
    """Mini query language input does not match the grammar."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EmptyQuery(LexguardError):
    """Nothing survived stopword removal; the query has no content."""


class NoCitation(LexguardError):
    """No legislation was found for a legal issue."""


# --- prompting ---------------------------------------------------------------

class TemplateInvalid(LexguardError):
    """A prompt template violates the template invariants."""


# --- LLM gateway -------------------------------------------------------------

class ScriptInvalid(LexguardError):
    """A mock backend script file is malformed."""


class BackendError(LexguardError):
    """Base class for LLM backend failures."""


class BackendUnavailable(BackendError):
    """All attempts to reach the backend failed."""


class BackendTimeout(BackendError):
    """The backend did not answer within the configured timeout."""


class BackendEmpty(BackendError):
    """The backend answered with empty text."""


class AuthMissing(BackendError):
    """The configured API key environment variable is not set."""
