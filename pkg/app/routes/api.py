from flask import Blueprint, jsonify, request
from pydantic import ValidationError

from app.cli.jobs import JobSpec, cmd_guess, cmd_invariant, cmd_sweep
from app.cli.verify import cmd_verify
from app.qweyl import read_table_csv
from app.utils.errors import BudgetExceeded, EngineError, ResampleError, VerificationError
from app.utils.logger import get_logger

logger = get_logger(__name__)

# Create a Blueprint object to hold the routes
api_bp = Blueprint("api", __name__)


def _error(exc: Exception):
    """Map an engine error to a JSON body and status code."""
    if isinstance(exc, BudgetExceeded):
        return jsonify({"success": False, "error": str(exc)}), 422
    if isinstance(exc, (VerificationError, ResampleError)):
        logger.exception("Engine check failed")
        return jsonify({"success": False, "error": str(exc)}), 500
    if isinstance(exc, ValidationError):
        return jsonify({"success": False, "error": exc.errors(include_url=False, include_context=False)}), 400
    return jsonify({"success": False, "error": str(exc)}), 400


def _job(data: dict) -> JobSpec:
    return JobSpec.model_validate(data)


@api_bp.route("/api/invariant", methods=["POST"])
def invariant():
    try:
        data = request.get_json(silent=True) or {}
        document = cmd_invariant(_job(data))
        return jsonify({"success": True, "result": document})
    except (EngineError, ValidationError, ValueError) as e:
        return _error(e)
    except Exception as e:
        logger.exception("Error evaluating invariant")
        return jsonify({"success": False, "error": str(e)}), 500


@api_bp.route("/api/verify", methods=["POST"])
def verify():
    try:
        data = request.get_json(silent=True) or {}
        document = cmd_verify(data.get("level", "quick"), data.get("seed"), data.get("suites"))
        return jsonify({"success": document["passed"], "result": document})
    except (EngineError, ValueError) as e:
        return _error(e)
    except Exception as e:
        logger.exception("Error running property suites")
        return jsonify({"success": False, "error": str(e)}), 500


@api_bp.route("/api/sweep", methods=["POST"])
def sweep():
    try:
        data = request.get_json(silent=True) or {}
        outcome = cmd_sweep(_job(data))
        return jsonify({"success": outcome.complete, "result": outcome.document})
    except (EngineError, ValidationError, ValueError) as e:
        return _error(e)
    except Exception as e:
        logger.exception("Error running sweep")
        return jsonify({"success": False, "error": str(e)}), 500


@api_bp.route("/api/guess", methods=["POST"])
def guess():
    try:
        data = request.get_json(silent=True) or {}
        table = read_table_csv(data["table_csv"]) if data.get("table_csv") else None
        job = _job(data["job"]) if data.get("job") else None
        document = cmd_guess(
            max_order=int(data.get("max_order", 1)),
            max_mdegree=int(data.get("max_mdegree", 2)),
            table=table,
            builtin_name=data.get("builtin"),
            job=job,
            seed=data.get("seed"),
            all_m=bool(data.get("all_m", False)),
        )
        return jsonify({"success": True, "result": document})
    except (EngineError, ValidationError, ValueError) as e:
        return _error(e)
    except Exception as e:
        logger.exception("Error guessing recurrences")
        return jsonify({"success": False, "error": str(e)}), 500


@api_bp.route("/api/health", methods=["GET"])
def health():
    return jsonify({"status": "ok", "message": "sl(2|1) invariant engine running"})
