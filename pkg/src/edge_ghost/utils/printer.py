from edge_ghost.models import Event, EventType

# Color codes
GRAY = "\033[90m"
RED = "\033[91m"
GREEN = "\033[92m"
YELLOW = "\033[93m"
CYAN = "\033[96m"
RESET = "\033[0m"


def _print_box(content: str, color: str = GRAY) -> None:
    """Print content in a box."""
    lines = content.split("\n")
    max_width = max(len(line) for line in lines) if lines else 0

    print(f"{color}┌{'─' * (max_width + 2)}┐{RESET}")
    for line in lines:
        padding = max_width - len(line)
        print(f"{color}│{RESET} {line}{' ' * padding} {color}│{RESET}")
    print(f"{color}└{'─' * (max_width + 2)}┘{RESET}")
    print()


def _format_value(value: object) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def print_event(event: Event) -> None:
    """Print a run event for a terminal."""

    kind = event.kind.subcommand

    if event.type == EventType.RUN_STARTED:
        mode = event.data.get("mode", "")
        seed = event.data.get("seed", "")
        _print_box(f"{kind.upper()} STARTED\nMode: {mode}  Seed: {seed}\nOutput: {event.data.get('output_dir', '')}", GREEN)

    elif event.type == EventType.RUN_FINISHED:
        details = "\n".join(f"{key}: {_format_value(value)}" for key, value in event.data.items())
        _print_box(f"{kind.upper()} FINISHED\n{details}", GREEN)

    elif event.type == EventType.RUN_ERROR:
        error = event.data.get("error", "unknown")
        _print_box(f"{kind.upper()} ERROR\nError: {error}", RED)

    elif event.type == EventType.STEP_FINISHED:
        step = event.data.get("step", "step")
        details = ", ".join(f"{key}={_format_value(value)}" for key, value in event.data.items() if key != "step")
        print(f"{CYAN}{kind}{RESET}: {step} done {GRAY}{details}{RESET}")

    elif event.type == EventType.ARTIFACT_WRITTEN:
        print(f"{GRAY}  → {event.data.get('path', '')}{RESET}")

    else:
        print(f"{YELLOW}[{kind}] {event.type.value}: {event.data}{RESET}")
