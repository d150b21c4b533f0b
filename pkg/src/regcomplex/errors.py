"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the CLI can map
failures to exit codes and reports without string matching.
"""


class RegComplexError(Exception):
    code = "error"


class InputError(RegComplexError):
    """Malformed or inconsistent user input (CLI exit code 2)."""

    code = "input-error"


class InvalidDegree(InputError):
    code = "invalid-degree"


class ParseError(InputError):
    code = "parse-error"


class DegreeMismatch(InputError):
    code = "degree-mismatch"


class NotSubgroup(InputError):
    code = "not-subgroup"


class InvalidSystem(InputError):
    code = "invalid-system"

    def __init__(self, violation, message=None):
        self.violation = violation
        super().__init__(message or violation)


class InvalidPoset(InputError):
    code = "invalid-poset"


class InvalidSection(InputError):
    code = "invalid-section"


class InvalidAction(InputError):
    code = "invalid-action"


class UnsupportedType(InputError):
    code = "unsupported-type"


class NotACGroup(InputError):
    code = "not-a-cgroup"


class NotPolytopeComplex(InputError):
    code = "not-polytope-complex"


class ResourceLimit(RegComplexError):
    """A configured size cap was exceeded (CLI exit code 3)."""

    code = "resource-limit"


class InternalInconsistency(RegComplexError):
    """Two independent evaluators disagreed. Never expected; always a bug."""

    code = "internal-inconsistency"
