from flask import Flask
from flask.logging import default_handler

from .commands import scan_bp
from .config import Config


def create_app(config_object=Config, **overrides):
    app = Flask(__name__)
    app.config.from_object(config_object)
    app.config.update(overrides)

    # library modules log under "consetlab.*", children of app.logger
    if default_handler not in app.logger.handlers:
        app.logger.addHandler(default_handler)
    app.logger.setLevel(app.config["LOG_LEVEL"])

    app.register_blueprint(scan_bp)
    return app
