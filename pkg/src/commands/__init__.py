# Command handlers for the mcbsim entry point
from . import (
    embedding_commands, experiment_commands, graph_commands, hardness_commands, simulation_commands,
)

COMMAND_MODULES = [
    graph_commands, simulation_commands, embedding_commands, hardness_commands, experiment_commands,
]


def register_all(subparsers):
    for module in COMMAND_MODULES:
        module.register(subparsers)


__all__ = ['COMMAND_MODULES', 'register_all']
