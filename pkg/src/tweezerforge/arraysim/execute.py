"""Plan execution with optional stochastic loss.

Loss semantics: the moving trap is live from pickup to drop, so under
proximity loss every occupied bystander site the lit trajectory sweeps
within the activation radius is lost with p_loss_near (one draw per
move/site pair).  Transport loss kills the cargo itself.  A later move
whose source was emptied by an earlier logged loss is skipped and
logged; a source empty for any other reason is a plan/state
inconsistency and raises.

Draw order is fixed (transport first, then bystanders by site index) so
seeded executions are reproducible.
"""

import numpy as np

from .paths import path_near_sites
from .types import ArrayState, DUAL, EMPTY, LossModel


def _execute_with_rng(state, plan, loss, rng):
    geom = state.geometry
    occ = state.occupancy.copy()
    centers = geom.centers()
    events = []
    missing = set()

    for i, move in enumerate(plan.moves):
        if occ[move.src] == EMPTY:
            if move.src in missing:
                events.append({"cause": "skipped_missing_cargo",
                               "move_index": i, "batch_id": move.batch_id,
                               "site": int(move.src),
                               "species": int(move.species)})
                if move.dst >= 0:
                    missing.add(move.dst)
                continue
            raise ValueError(
                f"move {i} picks up from empty site {move.src}: "
                "plan/state inconsistency")
        if occ[move.src] != move.species:
            raise ValueError(
                f"move {i} expects species {move.species} at site "
                f"{move.src}, found {int(occ[move.src])}")

        occ[move.src] = EMPTY
        cargo_alive = True

        if loss.mode == "proximity":
            if rng.random() < loss.p_loss_transport:
                cargo_alive = False
                events.append({"cause": "transport", "move_index": i,
                               "batch_id": move.batch_id, "site": -1,
                               "species": int(move.species)})
                if move.dst >= 0:
                    missing.add(move.dst)
            if loss.activation_radius > 0.0:
                skip = (move.src, move.dst) if move.dst >= 0 else (move.src,)
                near = path_near_sites(move.path, centers,
                                       loss.activation_radius, skip=skip)
                for s in near:
                    s = int(s)
                    if occ[s] == EMPTY:
                        continue
                    if rng.random() < loss.p_loss_near:
                        events.append({"cause": "proximity",
                                       "move_index": i,
                                       "batch_id": move.batch_id,
                                       "site": s,
                                       "species": int(occ[s])})
                        occ[s] = EMPTY
                        missing.add(s)

        if move.dst >= 0 and cargo_alive:
            if occ[move.dst] != EMPTY:
                raise ValueError(
                    f"move {i} drops onto occupied site {move.dst}: "
                    "plan/state inconsistency")
            occ[move.dst] = move.species

    return ArrayState(geom, occ), events


def execute_plan(state, plan, loss=None, seed=None):
    """Apply a move plan to a state; returns (final state, loss log)."""
    if loss is None:
        loss = LossModel()
    rng = np.random.default_rng(seed)
    return _execute_with_rng(state, plan, loss, rng)


def target_satisfied(state, target):
    """True when every designated site holds exactly its wanted species."""
    des = target.designation
    want = des != 0
    return bool(np.all(state.occupancy[want] == des[want]))
