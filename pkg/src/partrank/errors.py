"""Error type shared by every module.

All failures carry a machine-readable ``code`` (e.g. ``"NON_PRIME"``) so the
CLI can print it and map it to an exit status.
"""


class PrankError(Exception):
    """An error with a stable machine-readable code."""

    def __init__(self, code, message=""):
        self.code = code
        self.message = message
        super().__init__(f"{code}: {message}" if message else code)


# codes whose CLI exit status is "verification failure" rather than "input error"
VERIFICATION_CODES = frozenset(
    {"VERIFICATION_FAILED", "IE_MISMATCH", "UNSOLVABLE", "NOT_A_DECOMPOSITION"}
)
