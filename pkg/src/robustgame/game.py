"""Mallory/Alice turn loop and the repeated-game match harness."""

from __future__ import annotations

import hashlib
import json
import random
import statistics
from dataclasses import dataclass, field

from .attack import AttackProfile, attack_shot, attackable
from .generators import GeneratorConfig, derive_seed, generate
from .graph import ComponentRef, Graph, bfs_distances, is_connected, largest_component
from .metrics import MetricsSnapshot, snapshot
from .repair import RepairPolicy, RepairReport, repair_turn


class GameAborted(RuntimeError):
    def __init__(self, log: "GameLog", cause: BaseException):
        super().__init__(f"game aborted: {cause!r}")
        self.log = log
        self.cause = cause


@dataclass
class GameConfig:
    profile: AttackProfile | None  # None: repair-only game
    shots_per_turn: int = 100
    repair_policy: RepairPolicy = field(default_factory=RepairPolicy)
    max_turns: int = 10
    seed: int = 0
    observe_root: int | None = None
    observe_pl: int = 2

    def __post_init__(self):
        if self.shots_per_turn < 1:
            raise ValueError("shots_per_turn must be >= 1")
        if self.max_turns < 1:
            raise ValueError("max_turns must be >= 1")
        if self.observe_pl < 0:
            raise ValueError("observe_pl must be >= 0")

    def rules_hash(self) -> str:
        """Digest of the fixed rules: profile, shot budget, repair policy."""
        pol = self.repair_policy
        rules = {
            "profile": self.profile.token if self.profile else None,
            "shots_per_turn": self.shots_per_turn,
            "repair": {
                "kind": pol.kind,
                "reactivation_fraction": pol.reactivation_fraction,
                "attempt_success_prob": pol.attempt_success_prob,
                "fresh_links": pol.fresh_links,
                "usw": pol.usw.to_dict() if pol.usw else None,
            },
        }
        blob = json.dumps(rules, sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


@dataclass(frozen=True)
class ShotRecord:
    turn: int
    shot: int
    removed: ComponentRef
    damage_ratio: float
    subgraph_damage_ratio: float


@dataclass
class TurnRecord:
    turn: int
    shots: int
    start: MetricsSnapshot
    end_attack: MetricsSnapshot
    end_repair: MetricsSnapshot | None
    repair: RepairReport | None
    rules_hash: str


@dataclass
class GameOutcome:
    winner: str  # "Mallory" or "Alice"
    turns_played: int
    shots_fired: int
    final_turn: int | None = None
    final_shot: int | None = None


@dataclass
class GameLog:
    config: GameConfig
    observe_root: int
    ball_size: int
    per_shot: list[ShotRecord] = field(default_factory=list)
    per_turn: list[TurnRecord] = field(default_factory=list)
    outcome: GameOutcome | None = None


def _default_root(g: Graph) -> int:
    # highest degree, smallest label on ties
    return min(g.adj, key=lambda v: (-len(g.adj[v]), v))


def _ball_size(g: Graph, root: int, pl: int) -> int:
    if root not in g.adj:
        return 0
    return sum(1 for d in bfs_distances(g, root).values() if d <= pl)


def record_shot(log: GameLog, g: Graph, turn: int, shot: int, removed: ComponentRef) -> ShotRecord:
    """Append full-graph damage and observed-ball damage after one removal.

    Ball damage is the current radius-``observe_pl`` ball around the
    observed root, as a fraction of its size at game start (capped at 1).
    A removed root scores 0.
    """
    cfg = log.config
    dmg = len(largest_component(g)) / g.n if g.n else 0.0
    ball = _ball_size(g, log.observe_root, cfg.observe_pl)
    sub = min(1.0, ball / log.ball_size) if log.ball_size else 0.0
    rec = ShotRecord(turn, shot, removed, dmg, sub)
    log.per_shot.append(rec)
    return rec


def play(graph: Graph, config: GameConfig) -> GameLog:
    """Play one game on ``graph`` (mutated in place).

    Mallory fires up to ``shots_per_turn`` shots, stopping as soon as the
    graph disconnects; the game ends if it is disconnected at the end of his
    turn. Otherwise Alice repairs. No repair follows the last allowed turn.
    """
    if not is_connected(graph):
        raise ValueError("game must start on a connected graph")
    g = graph
    root = config.observe_root if config.observe_root is not None else _default_root(g)
    log = GameLog(config, root, _ball_size(g, root, config.observe_pl))
    attack_rng = random.Random(derive_seed(config.seed, "attack"))
    repair_rng = random.Random(derive_seed(config.seed, "repair"))
    rules = config.rules_hash()
    fired = 0
    carried = None  # the graph does not change between repair and the next turn
    try:
        for turn in range(1, config.max_turns + 1):
            start = carried or snapshot(g)
            shots = 0
            connected = True
            if config.profile is not None:
                while shots < config.shots_per_turn and attackable(g, config.profile):
                    removed = attack_shot(g, config.profile, attack_rng)
                    shots += 1
                    fired += 1
                    record_shot(log, g, turn, shots, removed)
                    connected = is_connected(g)
                    if not connected:
                        break
            end_attack = snapshot(g) if shots else start
            if not connected:
                log.per_turn.append(TurnRecord(turn, shots, start, end_attack, None, None, rules))
                log.outcome = GameOutcome("Mallory", turn, fired, turn, shots)
                return log
            if turn == config.max_turns:
                log.per_turn.append(TurnRecord(turn, shots, start, end_attack, None, None, rules))
                break
            report = repair_turn(g, config.repair_policy, repair_rng)
            carried = snapshot(g)
            log.per_turn.append(TurnRecord(turn, shots, start, end_attack, carried, report, rules))
    except Exception as err:
        raise GameAborted(log, err) from err
    log.outcome = GameOutcome("Alice", config.max_turns, fired)
    return log


# -- CSV rows ---------------------------------------------------------------

SHOT_COLUMNS = ("turn", "shot", "removed", "damage_ratio", "subgraph_damage_ratio")
TURN_COLUMNS = (
    "turn", "phase", "shot", "n", "m", "aipl", "apl", "cc", "density", "damage_ratio",
    "diameter", "efficiency", "vertices_restored", "edges_attempted", "edges_restored",
)


def shot_rows(log: GameLog):
    for r in log.per_shot:
        yield [r.turn, r.shot, str(r.removed), r.damage_ratio, r.subgraph_damage_ratio]


def turn_rows(log: GameLog):
    for t in log.per_turn:
        yield [t.turn, "start", 0, *t.start.row(), "", "", ""]
        yield [t.turn, "end_attack", t.shots, *t.end_attack.row(), "", "", ""]
        if t.end_repair is not None:
            yield [t.turn, "end_repair", t.shots, *t.end_repair.row(), *t.repair.row()]


# -- matches ----------------------------------------------------------------


@dataclass
class MatchSummary:
    family: str
    profile: str
    reps: int
    shots: list[float]  # shots to disconnection per rep; inf when Alice won
    mallory_wins: int
    alice_wins: int

    COLUMNS = ("family", "profile", "reps", "min_shots", "median_shots", "max_shots",
               "mallory_wins", "alice_wins")

    @property
    def median(self) -> float:
        return statistics.median(self.shots)

    def row(self) -> list:
        return [self.family, self.profile, self.reps, min(self.shots), self.median,
                max(self.shots), self.mallory_wins, self.alice_wins]


def rep_seed(master: int, rep: int) -> int:
    return derive_seed(master, "rep", rep)


def run_match(
    generator_config: GeneratorConfig,
    game_config: GameConfig,
    repetitions: int,
    master_seed: int | None = None,
    on_game=None,
) -> MatchSummary:
    """Independent seeded games; summarizes shots fired until disconnection.

    Rep ``i`` draws its graph from ``derive_seed(rep_seed, "graph")`` and its
    game from ``derive_seed(rep_seed, "game")``. ``on_game(rep, graph, log)``
    is called after each game when given.
    """
    if repetitions < 1:
        raise ValueError("repetitions must be >= 1")
    master = game_config.seed if master_seed is None else master_seed
    shots = []
    wins = {"Mallory": 0, "Alice": 0}
    for rep in range(repetitions):
        seed = rep_seed(master, rep)
        gcfg = GeneratorConfig(**{**generator_config.__dict__, "seed": derive_seed(seed, "graph")})
        g = generate(gcfg)
        cfg = GameConfig(**{**game_config.__dict__, "seed": derive_seed(seed, "game")})
        log = play(g, cfg)
        wins[log.outcome.winner] += 1
        shots.append(log.outcome.shots_fired if log.outcome.winner == "Mallory" else float("inf"))
        if on_game is not None:
            on_game(rep, g, log)
    return MatchSummary(
        family=generator_config.family,
        profile=game_config.profile.token if game_config.profile else "none",
        reps=repetitions,
        shots=shots,
        mallory_wins=wins["Mallory"],
        alice_wins=wins["Alice"],
    )


def default_repair(generator_config: GeneratorConfig) -> RepairPolicy:
    """USW graphs repair with their own construction parameters; others use the ledger model."""
    if generator_config.family == "usw":
        return RepairPolicy("usw", usw=generator_config.usw)
    return RepairPolicy("standard")
