import os
import sys

import django

'''
Command line entry point: python -m experiments <command> [options]

Each command is the management command of the same name with dashes in
place of underscores, so `python manage.py power_balance ...` is the same
as `python -m experiments power-balance ...`.
'''

COMMANDS = ('simulate', 'power-balance', 'convergence', 'check-structure')

USAGE = '''usage: python -m experiments <command> [options]

commands:
  simulate          integrate a model with one scheme
  power-balance     per-interval residual of the discrete power balance
  convergence       relative errors and experimental orders of convergence
  check-structure   pH structure conditions at random states

Run `python -m experiments <command> --help` for the options.
'''


def setup():
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    django.setup()


def cli_main(argv=None, stderr=None):
    """
    Runs the command named by argv[0] with the remaining arguments.

    Returns the exit status: 0 on success, nonzero with a message on
    stderr otherwise. Without a (known) command the usage is printed and
    2 returned.
    """
    if argv is None:
        argv = sys.argv[1:]
    if stderr is None:
        stderr = sys.stderr
    argv = list(argv)

    if not argv or argv[0] in ('-h', '--help', 'help'):
        stderr.write(USAGE)
        return 0 if argv else 2
    if argv[0] not in COMMANDS:
        stderr.write('Unknown command %r.\n\n%s' % (argv[0], USAGE))
        return 2

    setup()
    from django.core.management import load_command_class

    name = argv[0].replace('-', '_')
    command = load_command_class('experiments', name)
    try:
        command.run_from_argv(['phdg', name] + argv[1:])
    except SystemExit as e:
        if e.code is None:
            return 0
        return e.code if isinstance(e.code, int) else 1
    return 0
