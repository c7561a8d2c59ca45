import argparse
import sys
from typing import List, Optional

from scripts.universal.common import func_print_help
from scripts.universal.run import add_run

ArgumentSubParser = argparse._SubParsersAction


def add_sub_commands(sub_parsers: ArgumentSubParser):
    add_run(sub_parsers)


def create_parser():
    optodecouple_parser = argparse.ArgumentParser(prog="optodecouple", description="Exact multimode optomechanics: analytic observables, Fock-space oracle, linearised models and resonance scans.")
    optodecouple_parser.set_defaults(func=func_print_help(optodecouple_parser))
    optodecouple_subparsers = optodecouple_parser.add_subparsers(description="Tools for optomechanical scenarios.", help="Tools for optomechanical scenarios.")
    add_sub_commands(optodecouple_subparsers)

    return optodecouple_parser


Parser = create_parser()


def main(args: Optional[List[str]] = None) -> int:
    args = sys.argv[1:] if args is None else args
    r = Parser.parse_args(args)
    if hasattr(r, 'func') and r.func:
        return int(r.func(r))
    else:
        raise NotImplementedError("An entry point for the command was not supplied!")


if __name__ == "__main__":
    sys.exit(main())
