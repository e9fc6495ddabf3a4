from basicsr.utils.registry import Registry

TIMESCALE_REGISTRY = Registry('timescale')
CONDITION_REGISTRY = Registry('condition')
COMMAND_REGISTRY = Registry('command')
