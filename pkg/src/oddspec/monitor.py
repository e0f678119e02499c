"""Streaming monitor: is the currently measured domain inside the design domain?

The monitor folds samples in timestamp order, evaluates the specification
on each one, and emits events on verdict transitions. Exiting the design
domain is the hook for triggering a fallback manoeuvre, so the monitor is
conservative: an Unknown verdict while inside emits an Exit — absence of
evidence never counts as assurance. Unknown samples are still counted
separately so reports distinguish "out" from "unmeasured".

There is no debouncing: every transition emits immediately. Hysteresis
policies belong on top of the event stream, not inside it.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .domain import Lod, Trace
from .errors import MonitorError
from .evaluator import Diagnosis, Verdict, diagnose
from .specdsl import Atom, WellFormedSpec, atoms, serialize_spec
from .taxonomy import Taxonomy


class EventKind(enum.Enum):
    ENTRY = "entry"
    EXIT = "exit"
    UNKNOWN_START = "unknown_start"
    UNKNOWN_END = "unknown_end"


@dataclass(frozen=True)
class MonitorEvent:
    kind: EventKind
    t: float
    sample_index: int
    diagnosis: Diagnosis


# Events per (previous verdict, new verdict); None means before any sample.
# Unknown counts as not-in-domain for event purposes, hence Exit on
# True -> Unknown and no Entry on Unknown -> False.
_TRANSITIONS: dict[tuple[Verdict | None, Verdict], tuple[EventKind, ...]] = {
    (None, Verdict.TRUE): (EventKind.ENTRY,),
    (None, Verdict.FALSE): (EventKind.EXIT,),
    (None, Verdict.UNKNOWN): (EventKind.UNKNOWN_START,),
    (Verdict.TRUE, Verdict.TRUE): (),
    (Verdict.TRUE, Verdict.FALSE): (EventKind.EXIT,),
    (Verdict.TRUE, Verdict.UNKNOWN): (EventKind.EXIT, EventKind.UNKNOWN_START),
    (Verdict.FALSE, Verdict.TRUE): (EventKind.ENTRY,),
    (Verdict.FALSE, Verdict.FALSE): (),
    (Verdict.FALSE, Verdict.UNKNOWN): (EventKind.UNKNOWN_START,),
    (Verdict.UNKNOWN, Verdict.TRUE): (EventKind.UNKNOWN_END, EventKind.ENTRY),
    (Verdict.UNKNOWN, Verdict.FALSE): (EventKind.UNKNOWN_END,),
    (Verdict.UNKNOWN, Verdict.UNKNOWN): (),
}


@dataclass
class MonitorState:
    """Mutable fold state; owned by exactly one consumer at a time."""

    spec: WellFormedSpec
    taxonomy: Taxonomy
    last_verdict: Verdict | None = None
    last_t: float | None = None
    first_t: float | None = None
    samples_total: int = 0
    samples_in: int = 0
    samples_out: int = 0
    samples_unknown: int = 0
    dwell: dict[Verdict, float] = field(
        default_factory=lambda: {v: 0.0 for v in Verdict}
    )
    atom_violations: dict[Atom, int] = field(default_factory=dict)


@dataclass(frozen=True)
class MonitorReport:
    samples_total: int
    samples_in: int
    samples_out: int
    samples_unknown: int
    dwell_in_s: float
    dwell_out_s: float
    dwell_unknown_s: float
    events: tuple[MonitorEvent, ...]
    atom_violations: dict[Atom, int]


def monitor_init(spec: WellFormedSpec, taxonomy: Taxonomy) -> MonitorState:
    """Fresh state with zeroed counters.

    Raises:
        MonitorError: the spec was checked against a different taxonomy
            version.
    """
    if spec.taxonomy_version != taxonomy.version:
        raise MonitorError(
            f"spec was checked against taxonomy version "
            f"{spec.taxonomy_version!r}, not {taxonomy.version!r}"
        )
    state = MonitorState(spec=spec, taxonomy=taxonomy)
    state.atom_violations = {atom: 0 for atom in atoms(spec.ast)}
    return state


def monitor_step(
    state: MonitorState, cod: Lod
) -> tuple[MonitorState, Verdict, list[MonitorEvent]]:
    """Consume one sample; return the verdict and any transition events.

    Dwell time attributes the interval from the previous sample to this
    one to the PREVIOUS verdict (sample-and-hold).

    Raises:
        MonitorError: the sample's timestamp does not increase.
    """
    if state.last_t is not None and not cod.t > state.last_t:
        raise MonitorError(
            f"timestamp {cod.t} does not increase past {state.last_t}"
        )
    report = diagnose(state.spec, cod)
    verdict = report.verdict

    if state.last_t is not None:
        state.dwell[state.last_verdict] += cod.t - state.last_t
    else:
        state.first_t = cod.t

    sample_index = state.samples_total
    state.samples_total += 1
    if verdict is Verdict.TRUE:
        state.samples_in += 1
    elif verdict is Verdict.FALSE:
        state.samples_out += 1
    else:
        state.samples_unknown += 1
    for atom in report.falsified_atoms:
        state.atom_violations[atom] = state.atom_violations.get(atom, 0) + 1

    events = [
        MonitorEvent(kind=kind, t=cod.t, sample_index=sample_index, diagnosis=report)
        for kind in _TRANSITIONS[(state.last_verdict, verdict)]
    ]
    state.last_verdict = verdict
    state.last_t = cod.t
    return state, verdict, events


def run_monitor(
    spec: WellFormedSpec, taxonomy: Taxonomy, trace: Trace
) -> MonitorReport:
    """Fold the monitor over a whole trace and assemble the report.

    Pure in its inputs: the same (spec, taxonomy, trace) always produces
    an identical report.

    Raises:
        MonitorError: empty trace or mismatched taxonomy versions.
    """
    if trace.taxonomy_version != taxonomy.version:
        raise MonitorError(
            f"trace was recorded against taxonomy version "
            f"{trace.taxonomy_version!r}, not {taxonomy.version!r}"
        )
    if not trace.samples:
        raise MonitorError("trace has no samples")
    state = monitor_init(spec, taxonomy)
    events: list[MonitorEvent] = []
    for sample in trace.samples:
        _, _, step_events = monitor_step(state, sample)
        events.extend(step_events)
    return report_from_state(state, events)


def report_from_state(
    state: MonitorState, events: list[MonitorEvent]
) -> MonitorReport:
    """Assemble the report for a manually driven fold."""
    return MonitorReport(
        samples_total=state.samples_total,
        samples_in=state.samples_in,
        samples_out=state.samples_out,
        samples_unknown=state.samples_unknown,
        dwell_in_s=state.dwell[Verdict.TRUE],
        dwell_out_s=state.dwell[Verdict.FALSE],
        dwell_unknown_s=state.dwell[Verdict.UNKNOWN],
        events=tuple(events),
        atom_violations={
            atom: count for atom, count in state.atom_violations.items() if count > 0
        },
    )


def render_report(report: MonitorReport) -> dict:
    """JSON-ready dict in the documented report shape; atoms are rendered
    as their canonical specification text."""
    return {
        "samples": {
            "total": report.samples_total,
            "in": report.samples_in,
            "out": report.samples_out,
            "unknown": report.samples_unknown,
        },
        "dwell_s": {
            "in": report.dwell_in_s,
            "out": report.dwell_out_s,
            "unknown": report.dwell_unknown_s,
        },
        "events": [
            {
                "kind": event.kind.value,
                "t": event.t,
                "index": event.sample_index,
                "falsified": [serialize_spec(a) for a in event.diagnosis.falsified_atoms],
                "unknown": [serialize_spec(a) for a in event.diagnosis.unknown_atoms],
            }
            for event in report.events
        ],
        "atom_violations": {
            serialize_spec(atom): count
            for atom, count in report.atom_violations.items()
        },
    }


def report_json(report: MonitorReport) -> str:
    return json.dumps(render_report(report), indent=2) + "\n"
