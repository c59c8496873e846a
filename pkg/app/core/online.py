"""
The oracle/algorithm pair contract.

An advice algorithm is a pair: an oracle that sees the whole input and
writes a tape, and an online algorithm that is handed requests one at a
time and may read the tape sequentially whenever it likes.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional, Protocol, Sequence

from .advice.tape import AdviceTape


class OnlineAlgorithm(Protocol):
    def decide(self, request) -> int:
        """Answer bit for the next request (1 = accept for Min problems, 0 = accept for Max problems)."""
        ...


class AdvicePair(ABC):
    """Oracle and online algorithm for accept/reject problems."""

    name: str = "pair"

    @abstractmethod
    def write_advice(self, instance, tape: AdviceTape) -> None:
        ...

    @abstractmethod
    def make_algorithm(self, tape: AdviceTape) -> OnlineAlgorithm:
        ...


@dataclass
class Simulation:
    output: str
    tape: AdviceTape

    @property
    def bits_read(self) -> int:
        return self.tape.bits_read()


def run_online(algorithm: OnlineAlgorithm, requests: Sequence) -> str:
    return "".join(str(algorithm.decide(request)) for request in requests)


def simulate(pair: AdvicePair, instance, reader: Optional[AdviceTape] = None) -> Simulation:
    """
    Oracle writes, then the algorithm answers each request in order.
    Args:
        pair (AdvicePair): The pair under test
        instance (Instance): Input
        reader (AdviceTape): Optional pre-written tape to read instead of consulting the oracle
    Returns:
        Simulation: Output string and the tape that was read
    """
    if reader is None:
        written = AdviceTape()
        pair.write_advice(instance, written)
        reader = written.replay()
    algorithm = pair.make_algorithm(reader)
    return Simulation(output=run_online(algorithm, instance.requests), tape=reader)
