"""
Threshold schedule parameters.

Step j of the schedule tests threshold l_j = n / (1 + eps1)^j with sampling
rate p_j = p0 * (1 + eps1)^(j - 1), so l_j * p_j stays constant. Both are
recomputed from j rather than updated incrementally.
"""

import math
from dataclasses import dataclass, replace

from coreprobe.core.exceptions import ParameterError


def validate_epsilon_c(epsilon: float, c: float) -> None:
    if not (isinstance(epsilon, (int, float)) and 0.0 < epsilon <= 1.0):
        raise ParameterError("epsilon", epsilon, "must lie in (0, 1]")
    if not (isinstance(c, (int, float)) and c > 0.0):
        raise ParameterError("c", c, "must be positive")


def initial_rate(n: int, epsilon1: float, c: float) -> float:
    """p0 = 2((1+c) ln n + ln(log_{1+eps1} n)) (1+eps1)^2 / (eps1^2 n)."""
    log_steps = math.log(n) / math.log1p(epsilon1)
    return 2.0 * ((1.0 + c) * math.log(n) + math.log(log_steps)) * (1.0 + epsilon1) ** 2 / (epsilon1 ** 2 * n)


@dataclass(frozen=True)
class Params:
    """Run parameters at one step of the threshold schedule."""
    n: int
    epsilon: float
    epsilon1: float
    c: float
    p0: float
    step: int
    l: float
    p: float

    @property
    def growth(self) -> float:
        return 1.0 + self.epsilon1

    @property
    def sampling_done(self) -> bool:
        """True once p >= 1, where sampling gives way to exact peeling."""
        return self.p >= 1.0

    def at_step(self, step: int) -> "Params":
        if step < 1:
            raise ParameterError("step", step, "schedule starts at step 1")
        return replace(
            self,
            step=step,
            l=self.n / self.growth ** step,
            p=self.p0 * self.growth ** (step - 1),
        )

    def advance(self, by: int = 1) -> "Params":
        return self.at_step(self.step + by)

    def steps_to_threshold(self, target: float) -> int:
        """Smallest step >= the current one whose threshold is <= target."""
        if target <= 0:
            raise ParameterError("target", target, "must be positive")
        step = self.step
        if self.l > target:
            step = max(step, math.ceil(math.log(self.n / target) / math.log(self.growth)))
        # guard the logarithm against rounding in either direction
        while step > self.step and self.n / self.growth ** (step - 1) <= target:
            step -= 1
        while self.n / self.growth ** step > target:
            step += 1
        return step


def init_params(n: int, epsilon: float, c: float) -> Params:
    """Parameters at step 1: l = n/(1+eps1), p = p0.

    Raises:
        ParameterError: n < 2, epsilon outside (0, 1] or c <= 0.
    """
    validate_epsilon_c(epsilon, c)
    if n < 2:
        raise ParameterError("n", n, "sampling needs at least 2 nodes")
    epsilon1 = epsilon / 3.0
    p0 = initial_rate(n, epsilon1, c)
    return Params(n=n, epsilon=epsilon, epsilon1=epsilon1, c=c, p0=p0, step=1, l=n / (1.0 + epsilon1), p=p0)


def approximation_interval(exact: float, epsilon: float) -> tuple[float, float]:
    """(low, high] such that a correct approximation l of ``exact`` satisfies low < l <= high.

    low = exact / (1 + eps1)^2, high = exact * (1 + 1.5 eps1).
    """
    epsilon1 = epsilon / 3.0
    return exact / (1.0 + epsilon1) ** 2, exact * (1.0 + 1.5 * epsilon1)


def within_interval(value: float, exact: float, epsilon: float) -> bool:
    """Whether value lies in the approximation interval around exact (exact matches always pass)."""
    if value == exact:
        return True
    low, high = approximation_interval(exact, epsilon)
    return low < value <= high
