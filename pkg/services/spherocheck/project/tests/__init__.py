# services/spherocheck/project/tests/__init__.py
