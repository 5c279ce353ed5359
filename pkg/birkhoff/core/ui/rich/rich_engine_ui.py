import logging
import sys
from typing import Any

import rich.markup
from rich.console import Console
from rich.progress import (
    BarColumn,
    Progress,
    TaskProgressColumn,
    TextColumn,
    TimeElapsedColumn,
)
from typing_extensions import Self

from ..engine_ui import NAME_BY_LEVEL, DebugInfo, EngineUI, Level, StepProgress


COLOR_BY_LEVEL = {
    Level.DEBUG: "green",
    Level.VERBOSE: "white",
    Level.INFO: "blue",
    Level.WARNING: "yellow",
    Level.ERROR: "red",
}

LEVEL_BY_LOGGING_LEVEL = {
    logging.DEBUG: Level.DEBUG,
    logging.INFO: Level.INFO,
    logging.WARNING: Level.WARNING,
    logging.ERROR: Level.ERROR,
}


class RichStepProgress(StepProgress):
    def __init__(self, console: Console, total: int, description: str) -> None:
        super().__init__(total)

        self.progress = Progress(
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            TaskProgressColumn(),
            TextColumn("step {task.completed} / {task.total}"),
            TextColumn("degree {task.fields[degree]}"),
            TimeElapsedColumn(),
            console=console,
        )
        self.task = self.progress.add_task(description, total=total, degree=self.degree)

    def _refresh(self) -> None:
        self.progress.update(self.task, completed=self.completed, degree=self.degree)

    def __enter__(self) -> Self:
        self.progress.__enter__()
        return self

    def __exit__(self, *args: Any) -> None:
        self.progress.__exit__(*args)


class RichEngineUI(EngineUI):
    """
    EngineUI writing to a rich console on stderr, used when stderr is a TTY.
    """

    def __init__(self):
        super().__init__()
        self.console = Console(file=sys.stderr)

    def create_progress(self, total: int, description: str) -> StepProgress:
        return RichStepProgress(self.console, total, description)

    def _echo(self, level: Level, message: str) -> None:
        message = rich.markup.escape(message)
        if self.level == Level.DEBUG:
            self._debug_echo(level, message)
            return
        if level <= Level.WARNING:
            color = COLOR_BY_LEVEL[level]
            message = f"[{color}]{NAME_BY_LEVEL[level]}:[/] {message}"
        self.console.print(message, highlight=False)

    def _debug_echo(self, level: Level, rich_message: str) -> None:
        color = COLOR_BY_LEVEL[level]
        name = rich.markup.escape(f"[{NAME_BY_LEVEL[level][0]}]")
        info = DebugInfo.create()
        prefix = f"[cyan]{info.timestamp}[/] [bright_black]{info.thread_id}[/] "
        self.console.print(f"{prefix}[{color}]{name}[/] {rich_message}")

    def _echo_heading(self, message: str) -> None:
        message = rich.markup.escape(message)
        self.console.print(f"\n[green]# {message}[/]", highlight=False)

    def log(self, record: logging.LogRecord) -> None:
        level = LEVEL_BY_LOGGING_LEVEL.get(record.levelno, Level.ERROR)
        name = rich.markup.escape(f"{record.name}:{record.lineno}")
        msg = f"[magenta]{name}[/] {rich.markup.escape(record.getMessage())}"
        self._debug_echo(level, msg)
