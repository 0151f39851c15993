"""Flask application factory."""

from flask import Flask

from .config.settings import Config


def create_app(config_class=Config):
    """Create and configure the Flask application."""
    app = Flask(__name__)
    app.config.from_object(config_class)
    app.json.sort_keys = False

    # Register blueprints
    from .views.main import bp as main_bp
    app.register_blueprint(main_bp)

    from .views.api import bp as api_bp
    app.register_blueprint(api_bp, url_prefix='/api')

    return app
