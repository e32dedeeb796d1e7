"""Error type shared by every module.

Each failure carries a stable ``code`` string (``INVALID_PARITY``,
``TOO_LARGE``, ...) so callers and the CLI can branch on it without parsing
messages.
"""


class HardCutError(Exception):
    def __init__(self, code, message=""):
        self.code = code
        self.message = message
        super().__init__(f"{code}: {message}" if message else code)
