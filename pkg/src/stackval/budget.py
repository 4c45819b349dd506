"""Default enumeration caps.

Every cap can be overridden per call; the ``QSG_BUDGET`` environment
variable replaces all defaults at once (a single integer).
"""

import os

CYCLE_CAP = 10 ** 6
EXTENDED_CAP = 2 ** 16
STRATEGY_CAP = 10 ** 5
CELL_CAP = 10 ** 5
OPTION_CAP = 10 ** 6


def cap(default):
    env = os.environ.get("QSG_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return default
