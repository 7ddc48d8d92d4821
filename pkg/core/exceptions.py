class ConfigError(Exception):
    """Chave ou valor inválido na configuração de execução"""
