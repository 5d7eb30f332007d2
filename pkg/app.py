from flask import Flask

# Project Imports
from app.config import settings
from app.routes.api import api_bp
from app.utils.logger import get_logger

logger = get_logger(__name__)

# ============================================================
# App Initialization
# ============================================================
app = Flask(__name__)
app.config["JSON_SORT_KEYS"] = True

# Register the routes blueprint
app.register_blueprint(api_bp)

# ============================================================
# RUN SERVER
# ============================================================
if __name__ == "__main__":
    logger.info("Starting invariant API", extra={"seed": settings.DEFAULT_SEED, "workers": settings.SWEEP_WORKERS})
    app.run(debug=True, host="0.0.0.0", port=5000)
