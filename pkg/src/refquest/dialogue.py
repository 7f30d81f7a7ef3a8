"""Episode engine: agents, oracles, and the ask-answer-filter loop."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from collections.abc import Mapping, Sequence

from refquest.belief import Belief, init_belief
from refquest.dnet import DATA, ENTROPY, Question, build_network, select_question
from refquest.world import World

MAX_QUESTIONS_DEFAULT = 50


class BudgetExceededError(Exception):
    """An episode ran past its question budget; signals an agent bug."""


@dataclass(frozen=True)
class Answer:
    """Oracle response: a value for WH questions, yes/no for confirms."""

    value: str | None = None
    yes: bool | None = None

    def render(self) -> str:
        if self.value is not None:
            return self.value
        return "yes" if self.yes else "no"


class SimOracle:
    """Answers truthfully from the ground-truth assignment of the target."""

    def __init__(self, world: World, target_id: str):
        self.target = world.by_id(target_id)

    def answer(self, q: Question) -> Answer:
        actual = self.target.value(q.property)
        if q.kind == "wh":
            return Answer(value=actual)
        return Answer(yes=(actual == q.value))


class HumanOracle:
    """Prompts a human at the terminal and parses yes|no|<value> replies."""

    def __init__(self, world: World, ask=None, say=print):
        self.world = world
        # late-bound so test harnesses can swap builtins.input
        self.ask = ask if ask is not None else (lambda prompt: input(prompt))
        self.say = say

    def answer(self, q: Question) -> Answer:
        while True:
            reply = self.ask(f"{q.surface} ").strip().lower()
            if q.kind == "yn":
                if reply in ("yes", "y"):
                    return Answer(yes=True)
                if reply in ("no", "n"):
                    return Answer(yes=False)
                self.say("please answer yes or no")
            else:
                if reply in self.world.schema.domain(q.property):
                    return Answer(value=reply)
                self.say(
                    f"unknown {q.property}; expected one of: "
                    + ", ".join(self.world.schema.domain(q.property))
                )


class ModelAgent:
    """Decision-network agent; rebuilds the network over the surviving
    candidates before every question, so utilities always reflect the
    current evidence. Deterministic."""

    def __init__(
        self,
        policy: str = ENTROPY,
        yn_properties: Sequence[str] | None = None,
        freq_table: Mapping[str, float] | None = None,
    ):
        if policy not in (ENTROPY, DATA):
            raise ValueError(f"unknown model policy {policy!r}")
        self.policy = policy
        self.yn_properties = yn_properties
        self.freq_table = freq_table

    @property
    def name(self) -> str:
        return f"model-{self.policy}"

    def start_episode(self, world: World):
        pass

    def choose(self, belief: Belief) -> Question:
        yn = self.yn_properties
        if yn is None:
            yn = belief.world.schema.names
        net = build_network(
            belief.world, belief, policy=self.policy, yn_properties=yn, freq_table=self.freq_table
        )
        return select_question(net, belief)

    def observe(self, q: Question, a: Answer, belief: Belief):
        pass


class BaselineAgent:
    """Slot-filling baseline: uniformly random question about any property
    it has not yet learned, ignoring informativeness.

    A property counts as learned after a WH answer, after a confirmed
    yes, or once no answers have eliminated every value but one among the
    surviving candidates. Confirm questions target a uniformly random
    value present among the candidates.
    """

    def __init__(self, seed: int, yn_properties: Sequence[str] | None = None):
        self.seed = seed
        self.yn_properties = yn_properties
        self.rng = random.Random(seed)
        self.known: set[str] = set()

    @property
    def name(self) -> str:
        return "baseline"

    def start_episode(self, world: World):
        self.known = set()

    def choose(self, belief: Belief) -> Question:
        schema = belief.world.schema
        yn = self.yn_properties if self.yn_properties is not None else schema.names
        options: list[tuple[str, str]] = []
        for prop in schema.names:
            if prop in self.known:
                continue
            options.append(("wh", prop))
            if prop in yn:
                options.append(("yn", prop))
        kind, prop = self.rng.choice(options)
        if kind == "wh":
            return Question(kind="wh", property=prop)
        values = sorted(
            {e.value(prop) for e in belief.candidates()},
            key=schema.domain(prop).index,
        )
        return Question(kind="yn", property=prop, value=self.rng.choice(values))

    def observe(self, q: Question, a: Answer, belief: Belief):
        # belief is the post-update state
        if q.kind == "wh" or a.yes:
            self.known.add(q.property)
        else:
            survivors = {e.value(q.property) for e in belief.candidates()}
            if len(survivors) == 1:
                self.known.add(q.property)


@dataclass(frozen=True)
class EpisodeRecord:
    instruction_label: str
    target_id: str
    resolved_id: str
    transcript: tuple[tuple[Question, Answer], ...] = field(hash=False)

    @property
    def question_count(self) -> int:
        return len(self.transcript)


def apply_answer(belief: Belief, q: Question, a: Answer) -> Belief:
    if q.kind == "wh":
        return belief.apply_wh_answer(q.property, a.value)
    return belief.apply_yn_answer(q.property, q.value, a.yes)


def run_episode(
    world: World,
    target_id: str,
    agent,
    oracle=None,
    max_questions: int = MAX_QUESTIONS_DEFAULT,
    on_turn=None,
) -> EpisodeRecord:
    """Ask-answer-filter loop until exactly one candidate remains.

    `oracle` defaults to a truthful simulated oracle for the target.
    `on_turn(question, answer)` is an optional observer hook (used by the
    interactive mode to echo the exchange).
    """
    target = world.by_id(target_id)
    if oracle is None:
        oracle = SimOracle(world, target_id)
    belief = init_belief(world, target.label)
    agent.start_episode(world)
    transcript: list[tuple[Question, Answer]] = []
    while belief.resolved() is None:
        if len(transcript) >= max_questions:
            raise BudgetExceededError(
                f"no resolution after {max_questions} questions for target {target_id!r}"
            )
        q = agent.choose(belief)
        a = oracle.answer(q)
        belief = apply_answer(belief, q, a)
        agent.observe(q, a, belief)
        transcript.append((q, a))
        if on_turn is not None:
            on_turn(q, a)
    return EpisodeRecord(
        instruction_label=target.label,
        target_id=target_id,
        resolved_id=belief.resolved(),
        transcript=tuple(transcript),
    )
