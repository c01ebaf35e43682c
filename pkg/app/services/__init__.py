"""
业务逻辑服务层
"""

