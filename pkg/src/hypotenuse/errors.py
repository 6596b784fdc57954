class CapacityError(ValueError):
    """A size parameter is outside the range the artifact supports."""


def check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise CapacityError(f"{name}={value} outside supported range [{lo}, {hi}]")
