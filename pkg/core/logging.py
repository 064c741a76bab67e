from __future__ import annotations

import json
import sys
import time
from typing import Any, Dict, Optional

from loguru import logger


def configure_logging(level: str = "warning", trace_path: Optional[str] = None) -> None:
	logger.remove()
	# stdout carries results; diagnostics go to stderr
	logger.add(sys.stderr, level=level.upper(), serialize=True)
	if trace_path:
		# Separate sink for operation traces; filter by "operation" record flag
		logger.add(
			trace_path,
			level="INFO",
			serialize=True,
			filter=lambda record: record["extra"].get("operation", False),
		)


def log_operation(event: str, details: Dict[str, Any], status: str = "ok") -> None:
	"""
	Log one CLI operation as a JSON event.

	Args:
		event: The subcommand name (e.g., "prove-id")
		details: Arguments and outcome summary
		status: Status of the operation (default: "ok")
	"""
	logger.bind(operation=True).info(
		json.dumps(
			{
				"event": event,
				"status": status,
				"details": details,
				"timestamp": int(time.time() * 1000),
			},
			sort_keys=True,
			default=str,
		)
	)
