"""
the two failure kinds the CLI distinguishes by exit code
"""


class InputError(ValueError):
    """malformed or out-of-range user input"""


class ContractError(RuntimeError):
    """an operation was called outside its precondition"""


class CheckFailed(Exception):
    """a selftest comparison came out wrong"""
