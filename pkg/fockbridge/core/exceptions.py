"""Exception hierarchy; every error knows the exit status the CLI reports for it."""


class FockbridgeError(Exception):
    exit_code = 1


class ConfigError(FockbridgeError, ValueError):
    exit_code = 2


class MemoryCapError(FockbridgeError):
    exit_code = 3

    def __init__(self, what: str, size: int, cap: int):
        self.what = what
        self.size = size
        self.cap = cap
        super().__init__(f"{what} needs {size} states, over the cap of {cap}")


class DimensionCapError(MemoryCapError):
    pass


class StatisticsMismatchError(FockbridgeError, ValueError):
    pass


class SupportEscapeError(FockbridgeError, ValueError):
    def __init__(self, message: str, required_cutoff: float):
        self.required_cutoff = required_cutoff
        super().__init__(f"{message}; a cutoff of at least {required_cutoff:.6g} is required")


class GridTooCoarseError(FockbridgeError, ValueError):
    pass


class ProfileWriteError(FockbridgeError, OSError):
    def __init__(self, path, reason):
        self.path = str(path)
        super().__init__(f"could not write {self.path}: {reason}")
