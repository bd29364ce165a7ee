# services/spherocheck/project/__init__.py

import os
from flask import Flask


def create_app():
    # instantiate the app
    app = Flask(__name__)

    # set config
    app_settings = os.getenv('APP_SETTINGS', 'project.config.ProductionConfig')
    app.config.from_object(app_settings)

    # domain modules log under project.api.*, which propagates here
    app.logger.setLevel(app.config['LOG_LEVEL'])

    @app.shell_context_processor
    def ctx():
        return {'app': app}

    return app
