# services/spherocheck/project/config.py


import os


class BaseConfig:
    """Base configuration"""
    DEBUG = False
    TESTING = False
    SEED = int(os.environ.get('SPHEROCHECK_SEED', '0'))
    TRIALS = 16
    HEIGHT_BOUND = 7
    DIM_CAP = 64
    DMAX = 6
    PROFILE_DEGREE = 4
    MAX_DIM_W = 40
    GRASSMANNIAN_MAX_DIM = 12
    LAGRANGIAN_TRIALS = 8
    WORKERS = int(os.environ.get('SPHEROCHECK_WORKERS', '1'))
    TABLE = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'data', 'table61.txt')
    SCHEMA = 'spherocheck-report/1'
    TOOL_VERSION = '0.1.0'
    LOG_LEVEL = 'INFO'


class DevelopmentConfig(BaseConfig):
    """Development configuration"""
    DEBUG = True
    LOG_LEVEL = 'DEBUG'


class TestingConfig(BaseConfig):
    """Testing configuration"""
    DEBUG = True
    TESTING = True
    WORKERS = 1
    LOG_LEVEL = 'WARNING'


class ProductionConfig(BaseConfig):
    """Production configuration"""
    DEBUG = False
