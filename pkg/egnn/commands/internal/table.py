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

# pylint: disable=missing-docstring

from typing import Any, Callable, Dict, List, Optional, Set, Tuple


class Table:
    """
    Column-aligned text table. Rows are sorted by the sort key given
    to add_row() when printed; equal keys keep insertion order.
    """

    __slots__ = "fields", "rjustfields", "formatters", "maxfieldlen", "lines"

    def __init__(
            self,
            fields: List[str],
            rjustfields: Optional[Set[str]] = None,
            formatters: Optional[Dict[str, Callable[[Any],
                                                    str]]] = None) -> None:
        self.fields = fields
        self.rjustfields: Set[str] = set(rjustfields or ())
        given = formatters or {}
        self.formatters: Dict[str, Callable[[Any], str]] = {
            field: given.get(field, str) for field in fields
        }
        self.maxfieldlen = {field: len(field) for field in fields}
        self.lines: List[Tuple[Any, int, List[str]]] = []

    def add_row(self, sortkey: Any, values: Dict[str, Any]) -> None:
        row_values = []
        for field in self.fields:
            val = self.formatters[field](values[field])
            row_values.append(val)
            self.maxfieldlen[field] = max(self.maxfieldlen[field], len(val))
        self.lines.append((sortkey, len(self.lines), row_values))

    def _justify(self, field: str, text: str) -> str:
        width = self.maxfieldlen[field]
        if field in self.rjustfields:
            return f"{text:>{width}}"
        return f"{text:<{width}}"

    def render(self, print_headers: bool = True) -> List[str]:
        out = []
        if print_headers:
            out.append(" ".join(self._justify(f, f) for f in self.fields))
            out.append(" ".join('-' * self.maxfieldlen[f]
                                for f in self.fields))
        for _, _, row_values in sorted(self.lines, key=lambda l: l[:2]):
            out.append(" ".join(
                self._justify(f, v) for f, v in zip(self.fields, row_values)))
        return out

    def print_(self, print_headers: bool = True) -> None:
        for line in self.render(print_headers):
            print(line.rstrip())
