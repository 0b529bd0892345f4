"""
Anytime depth-first branch-and-bound over a ConstraintModel.

The search branches on arc literals (node with the fewest remaining
successors first, cheapest arc first), then on any remaining boolean, then
on integer variables (smallest value first). Every node is propagated to a
fixpoint and pruned by the admissible lower bound against the incumbent;
the incumbent also tightens the objective through a cut.

Usage:
    from config.search_configs import SearchConfig
    from engine.search import solve

    outcome = solve(model, instance, SearchConfig(time_budget=10))
    print(outcome.format_summary())
"""

import logging
import math
import threading
import time
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from config.search_configs import BranchingRule, IncumbentSource, RestartPolicy, SearchConfig
from core.errors import DecodeError, StructuralError
from core.instance import DEPOT, Instance
from core.objective import raw_objective
from core.solution import Solution
from engine.bounds import INFEASIBLE, BoundContext, lower_bound
from engine.outcome import SearchStats, SolveOutcome, SolveStatus, TracePoint
from engine.propagators import PropagationEngine
from engine.state import DomainStore, Inconsistency
from formulations.decode import decode_solution, encode_solution
from formulations.ir import ConstraintModel, Literal, check_assignment, evaluate_objective
from heuristics.construction import construct_initial
from heuristics.local_search import improve

logger = logging.getLogger(__name__)

LB_REFRESH_NODES = 512

# (variable, operation, value) with operation in {"fix", "lo"}
Action = Tuple[int, str, int]
Decision = Tuple[Action, Action]


def luby(i: int) -> int:
    """i-th term (1-based) of the Luby sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while i != (1 << k) - 1:
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1
    return 1 << (k - 1)


def apply_action(store: DomainStore, action: Action) -> None:
    var, op, value = action
    if op == "fix":
        store.fix(var, value)
    else:
        store.set_lo(var, value)


class IncumbentBoard:
    """
    Incumbent and global bounds shared by the workers.

    The upper bound only decreases and the lower bound only increases; a
    trace point is recorded whenever either moves.
    """

    def __init__(self, started: float):
        self._lock = threading.Lock()
        self._started = started
        self.solution: Optional[Solution] = None
        self.upper_bound: Optional[int] = None
        self.lower_bound: Optional[int] = None
        self.trace: List[TracePoint] = []
        self._open: Dict[int, float] = {}

    def cut_bound(self) -> Optional[int]:
        ub = self.upper_bound
        return None if ub is None else ub - 1

    def offer(self, solution: Solution, value: int) -> bool:
        with self._lock:
            if self.upper_bound is not None and value >= self.upper_bound:
                return False
            self.solution = solution
            self.upper_bound = value
            if self.lower_bound is not None and self.lower_bound > value:
                self.lower_bound = value
            self._record()
            return True

    def report_open(self, worker: int, bound: float) -> None:
        """Record the smallest open bound of a worker and raise the global LB."""
        with self._lock:
            self._open[worker] = bound
            self._raise(min(self._open.values()))

    def raise_lower_bound(self, value: float) -> None:
        with self._lock:
            self._raise(value)

    def _raise(self, value: float) -> None:
        if self.upper_bound is not None:
            value = min(value, self.upper_bound)
        if math.isinf(value):
            return
        value = int(value)
        if self.lower_bound is None or value > self.lower_bound:
            self.lower_bound = value
            self._record()

    def _record(self) -> None:
        point = TracePoint(time.perf_counter() - self._started, self.lower_bound, self.upper_bound)
        last = self.trace[-1] if self.trace else None
        if last is None or (last.lower_bound, last.upper_bound) != (point.lower_bound, point.upper_bound):
            self.trace.append(point)


@dataclass(frozen=True)
class _ArcChoice:
    cost: int
    target: int
    literal: Literal


class SearchContext:
    """Model-level tables shared by all workers (read-only during search)."""

    def __init__(self, model: ConstraintModel, instance: Instance, config: SearchConfig, board: IncumbentBoard):
        self.model = model
        self.instance = instance
        self.config = config
        self.board = board
        self.engine = PropagationEngine(model, cut_bound=board.cut_bound)
        self.bounds = BoundContext(model, instance)

        min_time = not instance.is_min_cost
        weights = instance.truck_time if min_time else instance.truck_cost
        loop_cost = dict(zip(instance.drone_eligible, instance.drone_time if min_time else instance.drone_cost))
        unreachable = sum(sum(row) for row in weights) + sum(loop_cost.values()) + 1

        self.successors: List[Tuple[int, int, List[_ArcChoice]]] = []
        for k, layer in enumerate(model.truck_arcs):
            by_node: Dict[int, List[_ArcChoice]] = {}
            for (i, j), lit in layer.items():
                if i == j:
                    cost = 0 if i == DEPOT else loop_cost.get(i, unreachable)
                else:
                    cost = weights[i][j]
                by_node.setdefault(i, []).append(_ArcChoice(cost, j, lit))
            for v in sorted(by_node):
                if model.is_giant_tour and v == DEPOT:
                    continue
                choices = sorted(by_node[v], key=lambda c: (c.cost, c.target))
                self.successors.append((k, v, choices))

        self.bool_vars = [v.index for v in model.booleans]
        self.int_vars = [v.index for v in model.integers]

    def choose(self, store: DomainStore, rng: Optional[np.random.Generator] = None) -> Optional[Decision]:
        """Next branching decision, or None when every variable is fixed."""
        best_key = None
        best_arc = None
        for k, v, choices in self.successors:
            free = []
            settled = False
            for choice in choices:
                truth = store.truth(choice.literal)
                if truth is True:
                    settled = True
                    break
                if truth is None:
                    free.append(choice)
            if settled or len(free) < 2:
                continue
            if self.config.branching is BranchingRule.COST_REGRET:
                primary = -(free[1].cost - free[0].cost)
            else:
                primary = len(free)
            tie = rng.random() if rng is not None else 0.0
            key = (primary, tie, k, v)
            if best_key is None or key < best_key:
                best_key, best_arc = key, free[0]
        if best_arc is not None:
            lit = best_arc.literal
            value = lit.value_making_true()
            return (lit.var, "fix", value), (lit.var, "fix", 1 - value)

        for var in self.bool_vars:
            if not store.is_fixed(var):
                return (var, "fix", 1), (var, "fix", 0)
        for var in self.int_vars:
            if not store.is_fixed(var):
                lo = store.lo[var]
                return (var, "fix", lo), (var, "lo", lo + 1)
        return None


class _Frame:
    __slots__ = ("mark", "alternative", "bound")

    def __init__(self, mark: int, alternative: Optional[Action], bound: float):
        self.mark = mark
        self.alternative = alternative
        self.bound = bound


class TreeSearch:
    """One worker's depth-first search over a subtree."""

    def __init__(self, context: SearchContext, worker: int, deadline: Optional[float], seed: int):
        self.ctx = context
        self.worker = worker
        self.deadline = deadline
        self.rng = np.random.default_rng(seed + worker)
        self.randomize = False
        self.stats = SearchStats()
        self._runs = [0]

    def budget_exhausted(self) -> bool:
        if self.deadline is not None and time.perf_counter() >= self.deadline:
            return True
        limit = self.ctx.config.node_limit
        return limit is not None and self.stats.nodes >= limit

    def search(self, store: DomainStore) -> bool:
        """Explore the subtree rooted at ``store``; True when it was exhausted."""
        config = self.ctx.config
        use_restarts = (
            config.restart_policy is RestartPolicy.LUBY
            and config.worker_count == 1
            and self.ctx.board.upper_bound is not None
        )
        try:
            if use_restarts:
                for r in range(config.max_restarts):
                    self.randomize = r > 0
                    if self._dive(store, luby(r + 1) * config.luby_base):
                        return True
                    if self.budget_exhausted():
                        return False
                    self.stats.restarts += 1
                    logger.debug(f"Restart {self.stats.restarts} (UB={self.ctx.board.upper_bound})")
                self.randomize = False
            return self._dive(store, None)
        finally:
            self.stats.propagations += self._runs[0]
            self._runs[0] = 0

    def _settle(self, store: DomainStore) -> Optional[float]:
        if not self.ctx.engine.propagate(store, counter=self._runs):
            self.stats.failures += 1
            return None
        bound = lower_bound(self.ctx.bounds, store)
        ub = self.ctx.board.upper_bound
        if bound == INFEASIBLE or (ub is not None and bound >= ub):
            self.stats.failures += 1
            return None
        return bound

    def _step(self, store: DomainStore, action: Action) -> Optional[float]:
        try:
            apply_action(store, action)
        except Inconsistency:
            self.stats.failures += 1
            return None
        return self._settle(store)

    def _report(self, stack: List[_Frame], current: Optional[float]) -> None:
        pending = [f.bound for f in stack if f.alternative is not None]
        if current is not None:
            pending.append(current)
        self.ctx.board.report_open(self.worker, min(pending, default=INFEASIBLE))

    def _dive(self, store: DomainStore, dive_limit: Optional[int]) -> bool:
        base = store.mark()
        stack: List[_Frame] = []
        dive_nodes = 0
        rng = None
        bound = self._settle(store)

        while True:
            if bound is not None:
                self.stats.nodes += 1
                dive_nodes += 1
                if self.stats.nodes % LB_REFRESH_NODES == 0:
                    self._report(stack, bound)
                if self.budget_exhausted() or (dive_limit is not None and dive_nodes > dive_limit):
                    self._report(stack, bound)
                    store.undo(base)
                    return False
                rng = self.rng if self.randomize else None
                decision = self.ctx.choose(store, rng)
                if decision is None:
                    self._record_leaf(store)
                    self._report(stack, None)
                    bound = None
                else:
                    first, second = decision
                    stack.append(_Frame(store.mark(), second, bound))
                    bound = self._step(store, first)
                    continue

            while stack:
                frame = stack[-1]
                store.undo(frame.mark)
                if frame.alternative is not None:
                    action, frame.alternative = frame.alternative, None
                    bound = self._step(store, action)
                    break
                stack.pop()
            else:
                store.undo(base)
                self.ctx.board.report_open(self.worker, INFEASIBLE)
                return True

    def _record_leaf(self, store: DomainStore) -> None:
        ctx = self.ctx
        assignment = store.assignment()
        if not check_assignment(ctx.model, assignment):
            raise DecodeError(f"{ctx.model.name}: search reached an assignment that violates the model")
        solution = decode_solution(ctx.model, assignment, ctx.instance)
        value = evaluate_objective(ctx.model, assignment)
        if ctx.board.offer(solution, value):
            logger.debug(f"Worker {self.worker}: incumbent {value} after {self.stats.nodes} nodes")


def _warm_start(context: SearchContext) -> None:
    model, instance, config = context.model, context.instance, context.config
    start = construct_initial(instance)
    if start is None:
        logger.warning(f"No heuristic incumbent for {instance.name}; searching without an upper bound")
        return
    logger.debug(f"Warm start: construction objective {raw_objective(instance, start)} on {instance.name}")
    began = time.perf_counter()
    improved = improve(
        instance, start,
        budget=None,
        seed=config.random_seed,
        max_iterations=config.heuristic_iterations,
    )
    logger.debug(
        f"Warm start: local search reached {raw_objective(instance, improved)} "
        f"in {time.perf_counter() - began:.2f}s ({config.heuristic_iterations} iterations)"
    )
    if model.force_truck_use and any(not tour for tour in improved.truck_tours):
        logger.warning(f"Heuristic incumbent leaves a truck idle; {model.name} forbids it")
        return
    assignment = encode_solution(model, improved, instance)
    if not check_assignment(model, assignment):
        logger.warning(f"Heuristic incumbent rejected by {model.name}")
        return
    value = evaluate_objective(model, assignment)
    if context.board.offer(improved, value):
        logger.debug(f"Warm start incumbent {value} for {model.name}")
    else:
        logger.debug(f"Warm start value {value} not below UB={context.board.upper_bound}")


def _split(context: SearchContext, root: DomainStore, parts: int) -> List[List[Action]]:
    """Breadth-first split of the root into at least ``parts`` action paths (when the tree allows)."""
    open_paths = deque([[]])
    done: List[List[Action]] = []
    while open_paths and len(open_paths) + len(done) < parts:
        path = open_paths.popleft()
        store = root.copy()
        if not _replay(context, store, path):
            continue
        decision = context.choose(store)
        if decision is None:
            done.append(path)
            continue
        first, second = decision
        open_paths.append(path + [first])
        open_paths.append(path + [second])
    return done + list(open_paths)


def _replay(context: SearchContext, store: DomainStore, path: List[Action]) -> bool:
    try:
        for action in path:
            apply_action(store, action)
            if not context.engine.propagate(store):
                return False
    except Inconsistency:
        return False
    return True


def solve(model: ConstraintModel, instance: Instance, config: SearchConfig) -> SolveOutcome:
    """
    Solve a model within the configured budget.

    Raises:
        StructuralError: the model was not built for this instance.
    """
    if not model.matches(instance):
        raise StructuralError(f"{model!r} was not built for {instance!r}")

    started = time.perf_counter()
    deadline = None if config.time_budget is None else started + config.time_budget
    board = IncumbentBoard(started)
    context = SearchContext(model, instance, config, board)
    logger.info(
        f"Solving {instance.name} with {model.name} "
        f"(budget={config.time_budget}s, workers={config.worker_count}, seed={config.random_seed})"
    )

    if config.incumbent_source is IncumbentSource.HEURISTICS:
        _warm_start(context)

    stats = SearchStats()
    root = DomainStore.for_model(model)
    root_runs = [0]
    exhausted = True
    if context.engine.propagate(root, everything=True, counter=root_runs):
        root_bound = lower_bound(context.bounds, root)
        board.raise_lower_bound(root_bound)
        if root_bound != INFEASIBLE and (board.upper_bound is None or root_bound < board.upper_bound):
            exhausted = _run_workers(context, root, deadline, stats)
    stats.propagations += root_runs[0]

    if exhausted:
        if board.solution is not None:
            status = SolveStatus.OPTIMAL
            board.raise_lower_bound(board.upper_bound)
        else:
            status = SolveStatus.INFEASIBLE
    else:
        status = SolveStatus.FEASIBLE if board.solution is not None else SolveStatus.UNKNOWN

    elapsed = time.perf_counter() - started
    outcome = SolveOutcome(
        status=status,
        incumbent=board.solution,
        upper_bound=board.upper_bound,
        lower_bound=None if status is SolveStatus.INFEASIBLE else (board.lower_bound or 0),
        trace=tuple(board.trace),
        stats=stats,
        model_name=model.name,
        time_budget=config.time_budget,
        scale=instance.scale,
        elapsed=elapsed,
    )
    logger.info(
        f"{model.name} on {instance.name}: {status.value} LB={outcome.lower_bound} "
        f"UB={outcome.upper_bound} nodes={stats.nodes} ({elapsed:.2f}s)"
    )
    return outcome


def _run_workers(context: SearchContext, root: DomainStore, deadline: Optional[float], stats: SearchStats) -> bool:
    config = context.config
    if config.worker_count == 1:
        worker = TreeSearch(context, 0, deadline, config.random_seed)
        exhausted = worker.search(root)
        stats.merge(worker.stats)
        return exhausted

    paths = _split(context, root, config.worker_count)
    root_bound = lower_bound(context.bounds, root)
    for index in range(len(paths)):
        context.board.report_open(index, root_bound)

    def run(index: int) -> Tuple[bool, SearchStats]:
        worker = TreeSearch(context, index, deadline, config.random_seed)
        store = root.copy()
        if not _replay(context, store, paths[index]):
            context.board.report_open(index, INFEASIBLE)
            return True, worker.stats
        return worker.search(store), worker.stats

    with ThreadPoolExecutor(max_workers=config.worker_count) as pool:
        results = list(pool.map(run, range(len(paths))))
    for _, worker_stats in results:
        stats.merge(worker_stats)
    if not paths:
        return True
    return all(done for done, _ in results)
