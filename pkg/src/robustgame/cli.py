"""Command-line front end: generate, metrics, attack, efficacy, game, match, plotdata.

Every subcommand reads an optional INI config (``--config``); flags given on
the command line override file values. Outputs land in ``--output-dir``
(default: ``$ROBUSTGAME_OUTPUT_DIR`` or the working directory) together with
a ``manifest.json`` inventory.

Exit codes:
    0  success
    1  usage error (bad flags, bad config, unknown profile)
    2  graph generation failed (connectivity retries exhausted)
    3  I/O error (unreadable or malformed input, refusing to overwrite, incomplete run dir)
    4  results truncated by a limit (shot limit, efficacy state cap)
    5  simulation error (game aborted, measure undefined on the input)
"""

from __future__ import annotations

import argparse
import configparser
import csv
import hashlib
import io
import json
import os
import random
import sys
import time
from pathlib import Path

from . import __version__
from .attack import (
    EfficacyStats,
    ProfileError,
    attack_shot,
    attackable,
    parse_profile,
    parse_profiles,
    recursive_efficacy,
)
from .centrality import MEASURES, DisconnectedInput
from .game import (
    SHOT_COLUMNS,
    TURN_COLUMNS,
    GameAborted,
    GameConfig,
    MatchSummary,
    play,
    rep_seed,
    run_match,
    shot_rows,
    turn_rows,
)
from .generators import ConnectivityRetryExhausted, GeneratorConfig, UswParams, derive_seed, generate
from .graph import EdgeListParseError, Graph, is_connected, largest_component, read_edge_list, write_edge_list
from .metrics import SNAPSHOT_FIELDS, snapshot
from .repair import REPAIR_KINDS, RepairPolicy

FORMAT_VERSION = 1
OUTPUT_ENV = "ROBUSTGAME_OUTPUT_DIR"

EXIT_OK, EXIT_USAGE, EXIT_GENERATION, EXIT_IO, EXIT_TRUNCATED, EXIT_SIMULATION = range(6)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for generation failures here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(EXIT_USAGE, message)


# -- config -----------------------------------------------------------------

# option name -> (ini section, ini key, type)
OPTIONS = {
    "family": ("generator", "family", str),
    "n": ("generator", "n", int),
    "p": ("generator", "p", float),
    "k": ("generator", "k", int),
    "m_attach": ("generator", "m_attach", int),
    "max_retries": ("generator", "max_retries", int),
    "beta": ("usw", "beta", float),
    "gamma": ("usw", "gamma", float),
    "t": ("usw", "t", float),
    "L": ("usw", "L", int),
    "alpha": ("usw", "alpha", float),
    "profile": ("game", "profile", str),
    "profiles": ("game", "profiles", str),
    "shots": ("game", "shots", int),
    "turns": ("game", "turns", int),
    "repair": ("game", "repair", str),
    "reactivation_fraction": ("game", "reactivation_fraction", float),
    "attempt_success_prob": ("game", "attempt_success_prob", float),
    "observe_root": ("game", "observe_root", int),
    "observe_pl": ("game", "observe_pl", int),
    "shot_limit": ("game", "shot_limit", int),
    "max_unique": ("game", "max_unique", int),
    "families": ("sweep", "families", str),
    "reps": ("sweep", "reps", int),
    "seed": ("run", "seed", int),
    "output_dir": ("run", "output_dir", str),
    "format_version": ("run", "format_version", int),
}

DEFAULTS = {
    "family": "er", "n": 1000, "p": 0.01, "k": 10, "m_attach": 1, "max_retries": 100,
    "beta": 0.95, "gamma": 0.95, "t": 0.10, "L": 10, "alpha": None,
    "profile": "D-V-H", "profiles": "all", "shots": 100, "turns": 10, "repair": "auto",
    "reactivation_fraction": 0.10, "attempt_success_prob": 0.90,
    "observe_root": None, "observe_pl": 2, "shot_limit": None, "max_unique": 500_000,
    "families": "er,pl,ws,usw", "reps": 10, "seed": 0, "output_dir": None,
    "format_version": FORMAT_VERSION,
}


def load_config(path) -> dict:
    cp = configparser.ConfigParser()
    cp.optionxform = str  # keep "L" distinct from "l"
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except OSError as err:
        raise CliError(EXIT_IO, f"cannot read config {path}: {err}") from None
    except configparser.Error as err:
        raise CliError(EXIT_USAGE, f"bad config {path}: {err}") from None
    known = {(sec, key): (name, typ) for name, (sec, key, typ) in OPTIONS.items()}
    values = {}
    for sec in cp.sections():
        for key, raw in cp.items(sec):
            if (sec, key) not in known:
                raise CliError(EXIT_USAGE, f"unknown config key [{sec}] {key}")
            name, typ = known[(sec, key)]
            try:
                values[name] = typ(raw)
            except ValueError:
                raise CliError(EXIT_USAGE, f"[{sec}] {key}: cannot parse {raw!r}") from None
    return values


def resolve(args: argparse.Namespace, names) -> dict:
    """Defaults < config file < explicit flags."""
    cfg = {n: DEFAULTS[n] for n in names}
    if args.config:
        for name, val in load_config(args.config).items():
            if name in cfg or name in ("output_dir", "format_version"):
                cfg[name] = val
    for name in names:
        val = getattr(args, name, None)
        if val is not None:
            cfg[name] = val
    fv = cfg.pop("format_version", FORMAT_VERSION)
    if fv != FORMAT_VERSION:
        raise CliError(EXIT_USAGE, f"config format_version {fv} not supported (need {FORMAT_VERSION})")
    cfg.pop("output_dir", None)
    return cfg


def config_hash(command: str, cfg: dict) -> str:
    blob = json.dumps({"command": command, **cfg}, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def usw_params(cfg: dict) -> UswParams:
    return UswParams(beta=cfg["beta"], gamma=cfg["gamma"], t=cfg["t"], l_repair=cfg["L"],
                     alpha=cfg["alpha"])


def generator_config(cfg: dict, family=None, seed=None) -> GeneratorConfig:
    return GeneratorConfig(
        family=family or cfg["family"], n=cfg["n"], p=cfg["p"], k=cfg["k"],
        m_attach=cfg["m_attach"], usw=usw_params(cfg),
        seed=cfg["seed"] if seed is None else seed, max_retries=cfg["max_retries"],
    )


# -- output -----------------------------------------------------------------


class Run:
    """Output directory, header comments and the manifest for one command."""

    def __init__(self, command: str, cfg: dict, output_dir, force: bool):
        self.command = command
        self.cfg = cfg
        self.hash = config_hash(command, cfg)
        self.dir = Path(output_dir)
        self.force = force
        self.files: list[Path] = []
        self.seeds: dict[str, int] = {}
        self.started = time.perf_counter()
        try:
            self.dir.mkdir(parents=True, exist_ok=True)
        except OSError as err:
            raise CliError(EXIT_IO, f"cannot create {self.dir}: {err}") from None

    def header(self) -> list[str]:
        lines = [f"robustgame {__version__} {self.command}", f"config_hash: {self.hash}"]
        if "seed" in self.cfg:
            lines.append(f"seed: {self.cfg['seed']}")
        return lines

    def _target(self, name: str) -> Path:
        path = self.dir / name
        if path.exists() and not self.force:
            raise CliError(EXIT_IO, f"{path} exists; pass --force to overwrite")
        return path

    def _write_text(self, name: str, text: str) -> Path:
        path = self._target(name)
        try:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as err:
            raise CliError(EXIT_IO, f"cannot write {path}: {err}") from None
        self.files.append(path)
        return path

    def write_csv(self, name: str, columns, rows) -> Path:
        buf = io.StringIO()
        for line in self.header():
            buf.write(f"# {line}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(rows)
        return self._write_text(name, buf.getvalue())

    def write_json(self, name: str, obj) -> Path:
        return self._write_text(name, json.dumps(obj, indent=2, sort_keys=True) + "\n")

    def write_graph(self, name: str, g: Graph) -> Path:
        path = self._target(name)
        try:
            write_edge_list(g, path, self.header())
        except OSError as err:
            raise CliError(EXIT_IO, f"cannot write {path}: {err}") from None
        self.files.append(path)
        return path

    def finish(self) -> Path:
        """Merge this run into manifest.json; inventory covers every file written so far."""
        path = self.dir / "manifest.json"
        manifest = {"tool_version": __version__, "files": {}, "runs": []}
        if path.exists():
            try:
                manifest = json.loads(path.read_text(encoding="utf-8"))
            except (OSError, ValueError) as err:
                raise CliError(EXIT_IO, f"unreadable manifest {path}: {err}") from None
        for f in self.files:
            data = f.read_bytes()
            manifest["files"][f.name] = {
                "bytes": len(data),
                "sha256": hashlib.sha256(data).hexdigest(),
                "config_hash": self.hash,
            }
        manifest["runs"] = [
            r for r in manifest.get("runs", [])
            if (r["command"], r["config_hash"]) != (self.command, self.hash)
        ]
        manifest["runs"].append({
            "command": self.command,
            "config_hash": self.hash,
            "config": self.cfg,
            "seeds": self.seeds,
            "outputs": sorted(f.name for f in self.files),
            "wall_seconds": round(time.perf_counter() - self.started, 3),
        })
        manifest["tool_version"] = __version__
        try:
            path.write_text(json.dumps(manifest, indent=2, sort_keys=True, default=str) + "\n",
                            encoding="utf-8")
        except OSError as err:
            raise CliError(EXIT_IO, f"cannot write {path}: {err}") from None
        return path


def _output_dir(args) -> Path:
    if args.output_dir:
        return Path(args.output_dir)
    if args.config:
        d = load_config(args.config).get("output_dir")
        if d:
            return Path(d)
    return Path(os.environ.get(OUTPUT_ENV, "."))


def _load_graph(path) -> Graph:
    try:
        return read_edge_list(path)
    except OSError as err:
        raise CliError(EXIT_IO, f"cannot read {path}: {err}") from None
    except EdgeListParseError as err:
        raise CliError(EXIT_IO, f"{path}: {err}") from None


def sidecar_path(graph_path) -> Path:
    return Path(graph_path).with_suffix(".json")


def _load_sidecar(graph_path) -> dict | None:
    path = sidecar_path(graph_path)
    if not path.exists():
        return None
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, ValueError) as err:
        raise CliError(EXIT_IO, f"unreadable sidecar {path}: {err}") from None


def _require_connected(g: Graph, what: str):
    if not is_connected(g):
        raise CliError(EXIT_SIMULATION, f"{what} needs a connected graph")


# -- subcommands ------------------------------------------------------------


def cmd_generate(args) -> int:
    names = ["family", "n", "p", "k", "m_attach", "max_retries", "beta", "gamma", "t", "L",
             "alpha", "seed"]
    cfg = resolve(args, names)
    gen = generator_config(cfg)
    if gen.family != "usw":
        for key in ("beta", "gamma", "t", "L", "alpha"):
            cfg.pop(key)
    cfg["family"] = gen.family
    run = Run("generate", cfg, _output_dir(args), args.force)
    try:
        g = generate(gen)
    except ConnectivityRetryExhausted as err:
        raise CliError(EXIT_GENERATION, str(err)) from None
    stem = args.name or f"{gen.family}-n{gen.n}-s{gen.seed}"
    run.seeds["graph"] = gen.seed
    gpath = run.write_graph(f"{stem}.edges", g)
    params = gen.to_dict()
    params.pop("seed")
    run.write_json(sidecar_path(gpath).name, {
        "format_version": FORMAT_VERSION,
        "tool_version": __version__,
        "config_hash": run.hash,
        "family": gen.family,
        "params": params,
        "seed": gen.seed,
        "n": g.n,
        "m": g.m,
    })
    run.finish()
    print(gpath)
    return EXIT_OK


def cmd_metrics(args) -> int:
    cfg = resolve(args, [])
    cfg["graph"] = Path(args.graph).name
    g = _load_graph(args.graph)
    run = Run("metrics", cfg, _output_dir(args), args.force)
    snap = snapshot(g)
    run.write_csv(args.out or "metrics.csv", ("graph", *SNAPSHOT_FIELDS), [[cfg["graph"], *snap.row()]])
    run.finish()
    return EXIT_OK


def cmd_attack(args) -> int:
    cfg = resolve(args, ["profile", "shot_limit", "seed"])
    cfg["graph"] = Path(args.graph).name
    cfg["scores_only"] = bool(args.scores_only)
    try:
        profile = parse_profile(cfg["profile"])
    except ProfileError as err:
        raise CliError(EXIT_USAGE, str(err)) from None
    g = _load_graph(args.graph)
    run = Run("attack", cfg, _output_dir(args), args.force)
    if args.scores_only:
        try:
            scores = MEASURES[(profile.measure, profile.component)](g)
        except DisconnectedInput as err:
            raise CliError(EXIT_SIMULATION, str(err)) from None
        run.write_csv(args.out or "scores.csv", ("kind", "component", "score"), scores.rows())
        run.finish()
        return EXIT_OK
    _require_connected(g, "attack")
    seed = derive_seed(cfg["seed"], "attack")
    run.seeds["attack"] = seed
    rng = random.Random(seed)
    rows = []
    code = EXIT_OK
    shots = 0
    while is_connected(g):
        if (cfg["shot_limit"] is not None and shots >= cfg["shot_limit"]) or not attackable(g, profile):
            code = EXIT_TRUNCATED
            break
        ref = attack_shot(g, profile, rng)
        shots += 1
        rows.append([shots, str(ref), len(largest_component(g)) / g.n if g.n else 0.0,
                     int(not is_connected(g))])
    run.write_csv(args.out or "attack.csv", ("shot", "removed", "damage_ratio", "disconnected"), rows)
    run.finish()
    if code == EXIT_TRUNCATED:
        print(f"stopped after {shots} shots without disconnecting", file=sys.stderr)
    else:
        print(shots)
    return code


def cmd_efficacy(args) -> int:
    cfg = resolve(args, ["profiles", "max_unique"])
    cfg["graph"] = Path(args.graph).name
    try:
        profiles = parse_profiles(cfg["profiles"])
    except ProfileError as err:
        raise CliError(EXIT_USAGE, str(err)) from None
    g = _load_graph(args.graph)
    _require_connected(g, "efficacy")
    run = Run("efficacy", cfg, _output_dir(args), args.force)
    stats = [recursive_efficacy(g, p, max_unique_graphs=cfg["max_unique"]) for p in profiles]
    run.write_csv(args.out or "efficacy.csv", EfficacyStats.COLUMNS, (s.row() for s in stats))
    run.finish()
    return EXIT_TRUNCATED if any(s.truncated for s in stats) else EXIT_OK


def _repair_policy(cfg: dict, family: str | None, usw: UswParams | None) -> RepairPolicy:
    kind = cfg["repair"]
    if kind == "auto":
        kind = "usw" if family == "usw" else "standard"
    if kind not in REPAIR_KINDS:
        raise CliError(EXIT_USAGE, f"unknown repair kind {kind!r}")
    if kind == "usw" and usw is None:
        raise CliError(EXIT_USAGE, "usw repair needs a graph sidecar with USW parameters")
    return RepairPolicy(kind, cfg["reactivation_fraction"], cfg["attempt_success_prob"],
                        usw=usw if kind == "usw" else None)


def _profile_or_none(token: str):
    if token.lower() == "none":
        return None
    try:
        return parse_profile(token)
    except ProfileError as err:
        raise CliError(EXIT_USAGE, str(err)) from None


def cmd_game(args) -> int:
    cfg = resolve(args, ["profile", "shots", "turns", "repair", "reactivation_fraction",
                         "attempt_success_prob", "observe_root", "observe_pl", "seed"])
    cfg["graph"] = Path(args.graph).name
    profile = _profile_or_none(cfg["profile"])
    g = _load_graph(args.graph)
    side = _load_sidecar(args.graph)
    family = side["family"] if side else None
    usw = None
    if side and side.get("params", {}).get("usw"):
        usw = UswParams(**side["params"]["usw"])
    policy = _repair_policy(cfg, family, usw)
    cfg["repair"] = policy.kind
    _require_connected(g, "game")
    try:
        game_cfg = GameConfig(profile, cfg["shots"], policy, cfg["turns"], cfg["seed"],
                              cfg["observe_root"], cfg["observe_pl"])
    except ValueError as err:
        raise CliError(EXIT_USAGE, str(err)) from None
    run = Run("game", cfg, _output_dir(args), args.force)
    run.seeds["game"] = cfg["seed"]
    try:
        log = play(g, game_cfg)
    except GameAborted as err:
        raise CliError(EXIT_SIMULATION, str(err)) from None
    prefix = args.prefix or ""
    run.write_csv(f"{prefix}shots.csv", SHOT_COLUMNS, shot_rows(log))
    run.write_csv(f"{prefix}turns.csv", TURN_COLUMNS, turn_rows(log))
    o = log.outcome
    run.write_csv(f"{prefix}outcome.csv",
                  ("winner", "turns_played", "shots_fired", "final_turn", "final_shot",
                   "observe_root", "ball_size", "rules_hash"),
                  [[o.winner, o.turns_played, o.shots_fired,
                    "" if o.final_turn is None else o.final_turn,
                    "" if o.final_shot is None else o.final_shot,
                    log.observe_root, log.ball_size, game_cfg.rules_hash()]])
    run.finish()
    print(f"{o.winner} after {o.turns_played} turns, {o.shots_fired} shots")
    return EXIT_OK


def cmd_match(args) -> int:
    names = ["family", "n", "p", "k", "m_attach", "max_retries", "beta", "gamma", "t", "L",
             "alpha", "profiles", "shots", "turns", "repair", "reactivation_fraction",
             "attempt_success_prob", "observe_pl", "families", "reps", "seed"]
    cfg = resolve(args, names)
    cfg.pop("family")
    families = [f.strip() for f in cfg["families"].split(",") if f.strip()]
    try:
        profiles = parse_profiles(cfg["profiles"])
        gens = [generator_config({**cfg, "family": None}, family=f) for f in families]
    except (ProfileError, ValueError) as err:
        raise CliError(EXIT_USAGE, str(err)) from None
    if cfg["reps"] < 1:
        raise CliError(EXIT_USAGE, "reps must be >= 1")
    cells = len(gens) * len(profiles)
    print(f"sweep: {len(gens)} families x {len(profiles)} profiles x {cfg['reps']} reps "
          f"= {cells * cfg['reps']} games", file=sys.stderr)
    run = Run("match", cfg, _output_dir(args), args.force)
    for i in range(cfg["reps"]):
        run.seeds[f"rep{i}"] = rep_seed(cfg["seed"], i)
    rows = []
    for gen in gens:
        policy = _repair_policy(cfg, gen.family, gen.usw)
        for profile in profiles:
            game_cfg = GameConfig(profile, cfg["shots"], policy, cfg["turns"], cfg["seed"],
                                  None, cfg["observe_pl"])
            try:
                summary = run_match(gen, game_cfg, cfg["reps"])
            except ConnectivityRetryExhausted as err:
                raise CliError(EXIT_GENERATION, str(err)) from None
            except GameAborted as err:
                raise CliError(EXIT_SIMULATION, str(err)) from None
            rows.append(summary.row() + [" ".join(str(s) for s in summary.shots)])
            print(f"{gen.family} {profile.token}: median {summary.median}", file=sys.stderr)
    run.write_csv(args.out or "match.csv", MatchSummary.COLUMNS + ("shots",), rows)
    run.finish()
    return EXIT_OK


PLOT_SERIES = ("start_of_turn_damage", "end_of_turn_damage", "subgraph_damage")


def _read_csv(path: Path) -> list[dict]:
    with open(path, encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(line for line in fh if not line.startswith("#")))


def _header_hash(path: Path) -> str | None:
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.startswith("#"):
                break
            if line.startswith("# config_hash:"):
                return line.split(":", 1)[1].strip()
    return None


def cmd_plotdata(args) -> int:
    """Tidy (series, x, y) rows with x = cumulative shot count.

    start_of_turn_damage and end_of_turn_damage are the whole-graph damage
    ratio before and after Mallory's shots in each turn; subgraph_damage is
    the per-shot damage of the observed ball.
    """
    run_dir = Path(args.run_dir)
    prefix = args.prefix or ""
    turns_path, shots_path = run_dir / f"{prefix}turns.csv", run_dir / f"{prefix}shots.csv"
    if not (turns_path.is_file() and shots_path.is_file()):
        raise CliError(EXIT_IO, f"{run_dir} is not a completed game run (missing turns/shots CSV)")
    try:
        turns = _read_csv(turns_path)
        shots = _read_csv(shots_path)
    except (OSError, csv.Error) as err:
        raise CliError(EXIT_IO, f"cannot read run dir {run_dir}: {err}") from None
    if not turns:
        raise CliError(EXIT_IO, f"{turns_path} has no turns")
    # identify the source by its game config, not its location
    cfg = {"source_config_hash": _header_hash(turns_path), "prefix": prefix}
    rows = []
    offset = 0
    for r in turns:
        phase = r["phase"]
        if phase == "start":
            rows.append(("start_of_turn_damage", offset, float(r["damage_ratio"])))
        elif phase == "end_attack":
            offset += int(r["shot"])
            rows.append(("end_of_turn_damage", offset, float(r["damage_ratio"])))
    done = 0
    for s in shots:
        done += 1
        rows.append(("subgraph_damage", done, float(s["subgraph_damage_ratio"])))
    rows.sort(key=lambda r: (PLOT_SERIES.index(r[0]), r[1]))
    out_dir = Path(args.output_dir) if args.output_dir else run_dir
    run = Run("plotdata", cfg, out_dir, args.force)
    run.write_csv(args.out or f"{prefix}plotdata.csv", ("series", "x", "y"), rows)
    run.finish()
    return EXIT_OK


# -- parser -----------------------------------------------------------------


def _common(p):
    p.add_argument("--config", help="INI config file; flags override its values")
    p.add_argument("--output-dir", help=f"output directory (default ${OUTPUT_ENV} or .)")
    p.add_argument("--force", action="store_true", help="overwrite existing outputs")


def _gen_flags(p):
    p.add_argument("--family", help="er, pl, ws or usw")
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--k", type=int)
    p.add_argument("--m-attach", dest="m_attach", type=int)
    p.add_argument("--max-retries", dest="max_retries", type=int)
    p.add_argument("--beta", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--L", dest="L", type=int)
    p.add_argument("--alpha", type=float)


def _game_flags(p):
    p.add_argument("--shots", type=int, help="shots per turn")
    p.add_argument("--turns", type=int)
    p.add_argument("--repair", help="standard, usw, none or auto (default: by graph family)")
    p.add_argument("--reactivation-fraction", dest="reactivation_fraction", type=float)
    p.add_argument("--attempt-success-prob", dest="attempt_success_prob", type=float)
    p.add_argument("--observe-pl", dest="observe_pl", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="robustgame", description="Graph robustness attack/repair toolkit")
    parser.add_argument("--version", action="version", version=f"robustgame {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("generate", help="build a graph and its metadata sidecar")
    _common(p)
    _gen_flags(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--name", help="file stem (default family-nN-sSEED)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("metrics", help="one metrics snapshot row for a graph file")
    _common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("attack", help="attack a graph until it disconnects")
    _common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--profile")
    p.add_argument("--shot-limit", dest="shot_limit", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--scores-only", action="store_true", help="dump the profile's centrality scores")
    p.add_argument("--out")
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("efficacy", help="recursive attack-profile efficacy")
    _common(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--profiles", help="'all' or a comma-separated list")
    p.add_argument("--max-unique", dest="max_unique", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_efficacy)

    p = sub.add_parser("game", help="play one attack/repair game")
    _common(p)
    _game_flags(p)
    p.add_argument("--graph", required=True)
    p.add_argument("--profile", help="attack profile, or 'none' for a repair-only game")
    p.add_argument("--observe-root", dest="observe_root", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--prefix", help="prefix for output file names")
    p.set_defaults(func=cmd_game)

    p = sub.add_parser("match", help="repeated games over families and profiles")
    _common(p)
    _gen_flags(p)
    _game_flags(p)
    p.add_argument("--families", help="comma-separated families")
    p.add_argument("--profiles", help="'all' or a comma-separated list")
    p.add_argument("--reps", type=int)
    p.add_argument("--seed", type=int, help="master seed")
    p.add_argument("--out")
    p.set_defaults(func=cmd_match)

    p = sub.add_parser("plotdata", help="tidy damage series from a game run dir")
    p.add_argument("--run-dir", dest="run_dir", required=True)
    p.add_argument("--output-dir", help="where to write (default: the run dir)")
    p.add_argument("--prefix", help="game output prefix")
    p.add_argument("--force", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_plotdata, config=None)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as err:
        print(f"robustgame: error: {err}", file=sys.stderr)
        return err.code
    except ValueError as err:
        # parameter validation in the library (bad n, p, beta, ...)
        print(f"robustgame: error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
