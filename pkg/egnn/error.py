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
"""This module contains the "egnn.Error" exception and its subclasses."""

from typing import Optional


class Error(Exception):
    """
    This is the superclass of all egnn error exceptions.
    """

    text: str = ""

    def __init__(self, text: str) -> None:
        self.text = f"egnn: {text}"
        super().__init__(self.text)


class ConfigError(Error):
    """
    Thrown for invalid hyper-parameters or experiment configurations.
    """

    def __init__(self, message: str) -> None:
        super().__init__(f"invalid configuration: {message}")


class EmptyModelError(Error):
    # pylint: disable=missing-docstring

    def __init__(self) -> None:
        super().__init__("the model has no granules yet")


class InstanceError(Error):
    """
    Thrown when a feature vector violates the unit-cube contract
    (non-finite entries, values outside [0, 1] or the wrong length).
    """

    def __init__(self, message: str) -> None:
        super().__init__(f"invalid instance: {message}")


class DataError(Error):
    """
    Thrown when input files or signals are malformed. Whenever they
    are known, the offending path, row and column are part of the
    message.
    """

    path: Optional[str] = None
    row: Optional[int] = None
    column: Optional[str] = None

    def __init__(self,
                 message: str,
                 path: Optional[str] = None,
                 row: Optional[int] = None,
                 column: Optional[str] = None) -> None:
        self.path, self.row, self.column = path, row, column
        where = []
        if path is not None:
            where.append(str(path))
        if row is not None:
            where.append(f"row {row}")
        if column is not None:
            where.append(f"column {column}")
        if where:
            message = f"{', '.join(where)}: {message}"
        super().__init__(message)


class WindowError(DataError):
    # pylint: disable=missing-docstring

    def __init__(self, message: str) -> None:
        super().__init__(f"bad window: {message}")


class EmptyBandError(DataError):
    # pylint: disable=missing-docstring

    band: str = ""

    def __init__(self, band: str) -> None:
        self.band = band
        super().__init__(
            f"no spectral bins fall in the {band} band; use a longer window")


class CommandNotFoundError(Error):
    # pylint: disable=missing-docstring

    command: str = ""

    def __init__(self, command: str) -> None:
        self.command = command
        super().__init__(f"cannot recognize command: {command}")


class CommandError(Error):
    # pylint: disable=missing-docstring

    command: str = ""
    message: str = ""

    def __init__(self, command: str, message: str) -> None:
        self.command = command
        self.message = message
        super().__init__(f"{command}: {message}")


class CommandArgumentsError(CommandError):
    # pylint: disable=missing-docstring

    def __init__(self, command: str) -> None:
        super().__init__(command,
                         'invalid input. Use -h to get argument description')
