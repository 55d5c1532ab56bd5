"""Utilities for bit-mask subsets, string manipulation and string formatting for the user."""

from typing import Tuple, List, Iterator, Sequence


def popcount(mask: int) -> int:
	"""Returns the number of set bits of the mask, i.e. the cardinality of the subset."""
	return bin(mask).count('1')


def iter_bits(mask: int) -> Iterator[int]:
	"""Yields the indexes of the set bits in ascending order."""
	ix = 0
	while mask:
		if mask & 1:
			yield ix
		mask >>= 1
		ix += 1


def bits_to_mask(elements: Sequence[int]) -> int:
	"""Returns the mask with the entered element indexes set."""
	mask = 0
	for u in elements:
		mask |= 1 << u
	return mask


def submasks(mask: int) -> List[int]:
	"""Returns all the submasks of the mask, in ascending order. The list has 2^popcount(mask) items."""
	result = [0]
	for u in iter_bits(mask):
		bit = 1 << u
		result += [x | bit for x in result]
	result.sort()
	return result


def trim_str_response(text: str) -> str:
	"""Trims white characters and one pair of symmetrical quotation marks.
	Examples: " 'abc' " -> 'abc', '"a,b"' -> 'a,b', "'abc" -> "'abc" """
	if not text:
		return text
	text = text.strip()
	if len(text) >= 2 and text[0] == text[-1] and text[0] in ('"', "'"):
		return text[1:-1]
	return text


def parse_token_to_key_and_value(token: str) -> Tuple[str, str]:
	"""Parses entered string to name and value with the delimiter '='.
	If the token is empty: name = None, value = None.
	If the '=' is not found: name = token, value = None.
	name is trimmed for white spaces.
	value is trimmed with trim_str_response()."""
	token = token.strip()
	if not token:
		# noinspection PyTypeChecker
		return None, None
	if '=' in token:
		name, value = token.split('=', 1)
		return name.strip(), trim_str_response(value)
	# noinspection PyTypeChecker
	return token, None


def get_plural_string(word: str, amount: int) -> str:
	"""Returns singular or plural of the word depending on the amount.
	Example:
		word = 'trial', amount = 0 -> '0 trials'
		word = 'trial', amount = 1 -> '1 trial'
		word = 'trial', amount = 5 -> '5 trials'"""
	if amount == 1:
		return f'1 {word}'
	return f'{amount} {word}s'


def shorten_string_middle(string: str, max_len: int) -> str:
	"""If the length of the string is bigger than the max_len,
	the middle of the string is abbreviated with ' .... ' """
	count = len(string)
	if count <= max_len:
		return string
	half = int((max_len - 6) / 2)
	md = (max_len - 6) % 2
	return string[:half + md] + ' .... ' + string[(count - half):]


def format_subset(mask: int, labels: Sequence[str] = None, max_len: int = 120) -> str:
	"""Returns user-readable subset string, e.g. '{a, b_1}' or '{0, 3, 5}'.
	Long subsets are abbreviated in the middle."""
	if labels:
		names = [labels[u] for u in iter_bits(mask)]
	else:
		names = [str(u) for u in iter_bits(mask)]
	return shorten_string_middle('{' + ', '.join(names) + '}', max_len)
