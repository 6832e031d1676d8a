#
# Copyright 2026 The egnn Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
"""
This file contains all the logic of the egnn "executable"
like the entry point, command line interface, etc...
"""

import argparse
import logging
import os
import sys
import traceback
from typing import List, Optional

import egnn

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


def parse_arguments(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """
    Sets up argument parsing of the global options. Everything after
    the verb is left for the verb's own parser.
    """
    parser = argparse.ArgumentParser(
        prog="egnn",
        description="Evolving granular neural network classifier",
        epilog="run 'egnn help' for the list of verbs")
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v",
                           "--verbose",
                           action="store_true",
                           help="log debugging messages")
    verbosity.add_argument("-q",
                           "--quiet",
                           action="store_true",
                           help="only log errors")
    parser.add_argument("verb",
                        nargs="?",
                        default="help",
                        help="the verb to run (default: help)")
    parser.add_argument("args",
                        nargs=argparse.REMAINDER,
                        help="arguments of the verb")
    return parser.parse_args(argv)


def setup_logging(args: argparse.Namespace) -> None:
    """
    Configure the root logger once; the level comes from -v/-q, else
    from EGNN_LOG_LEVEL, else WARNING.
    """
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "ERROR"
    else:
        level = os.getenv("EGNN_LOG_LEVEL", "WARNING").upper()
        if not isinstance(logging.getLevelName(level), int):
            level = "WARNING"
    logging.basicConfig(stream=sys.stderr,
                        level=level,
                        format="egnn: %(levelname)s: %(message)s")


def eval_cmd(argv: List[str]) -> int:
    """
    Runs the verb named by argv[0] and maps its outcome to the exit
    code of the executable.

    Returns:
        0 for success
        1 for usage and configuration errors
        2 for malformed or missing data
    """
    # pylint: disable=broad-except
    try:
        return egnn.invoke(argv)
    except egnn.CommandArgumentsError:
        #
        # We skip printing anything for this specific error
        # as argparse should have already printed a helpful
        # message for us.
        #
        return EXIT_USAGE
    except egnn.DataError as err:
        print(err.text, file=sys.stderr)
        return EXIT_DATA
    except egnn.Error as err:
        print(err.text, file=sys.stderr)
        return EXIT_USAGE
    except KeyboardInterrupt:
        print(file=sys.stderr)
        return EXIT_USAGE
    except Exception:
        #
        # Every failure a verb anticipates is an egnn.Error. Anything
        # else is a bug, and the traceback is what we need to fix it.
        #
        print("egnn encountered an internal error due to a bug. Here's the",
              file=sys.stderr)
        print("information you need to file the bug:", file=sys.stderr)
        print("----------------------------------------------------------",
              file=sys.stderr)
        print(f"Command: egnn {' '.join(argv)}", file=sys.stderr)
        print(file=sys.stderr)
        traceback.print_exc()
        print("----------------------------------------------------------",
              file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[List[str]] = None) -> None:
    """ The entry point of the egnn "executable" """
    try:
        args = parse_arguments(argv)
    except SystemExit as err:
        #
        # argparse exits with 2 on bad global options, which would
        # read as a data error here.
        #
        sys.exit(EXIT_USAGE if err.code else EXIT_OK)
    setup_logging(args)
    egnn.register_commands()
    sys.exit(eval_cmd([args.verb] + args.args))


if __name__ == "__main__":
    main()
