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
Common number formatting functions.
"""

from typing import Optional, Union


def float_nicenum(num: Optional[Union[int, float]], digits: int = 4) -> str:
    """
    Return `num` with `digits` decimals, or "-" when it is missing.
    """
    if num is None:
        return "-"
    return f"{float(num):.{digits}f}"


def percent(num: Optional[float], digits: int = 2) -> str:
    """
    Return the fraction `num` as a percentage, e.g. 0.817 -> "81.70%".
    """
    if num is None:
        return "-"
    return f"{100.0 * num:.{digits}f}%"
