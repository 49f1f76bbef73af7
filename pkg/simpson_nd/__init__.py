"""simpson_nd: exact Simpson-style cubature rules in n dimensions."""
from flask import Flask, jsonify

from simpson_nd.errors import CubatureError
from simpson_nd.extensions import Settings, configure_logging

__version__ = "0.1.0"

MAX_HTTP_DEGREE = 12


def create_app(settings=None):
    """Flask factory for the read-only JSON API over the rule catalog."""
    settings = settings or Settings.from_env()
    configure_logging(settings.log_level)

    app = Flask(__name__)
    app.config["SECRET_KEY"] = settings.secret_key
    app.config["JSON_SORT_KEYS"] = False
    app.json.sort_keys = False
    app.config["SIMPSON_ND_MAX_DEGREE"] = MAX_HTTP_DEGREE

    from simpson_nd.routes.regions import regions_bp
    from simpson_nd.routes.rules import rules_bp

    app.register_blueprint(rules_bp)
    app.register_blueprint(regions_bp)

    @app.errorhandler(CubatureError)
    def handle_cubature_error(exc):
        app.logger.warning("request failed: %s", exc)
        return jsonify(exc.to_dict()), 400

    return app
