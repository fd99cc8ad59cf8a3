"""Single-item auctions on social networks.

Mechanisms (local second price, network VCG, information diffusion
mechanism), the critical-node analysis behind them, and a property verifier
for incentive compatibility, individual rationality, budget balance and
revenue dominance.
"""

from diffauct._core import *  # noqa: F401,F403
from diffauct._core import __doc__ as _core_doc  # noqa: F401
