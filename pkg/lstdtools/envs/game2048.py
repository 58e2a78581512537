"""
2048 on a 4 x 4 board held as a 16-tuple in row-major order, 0 for an empty cell.

Moves are implemented once, for sliding left, and the other directions are obtained by transforming the board
before and after the slide. The reward of a move is the sum of the tiles created by merges.
"""
from typing import NamedTuple, Tuple

import numpy as np

from lstdtools.envs.base import Environment

Board = Tuple[int, ...]

LEFT = 0
RIGHT = 1
UP = 2
DOWN = 3
DIRECTIONS = (LEFT, RIGHT, UP, DOWN)

SIZE = 4
CELLS = SIZE * SIZE


class MoveResult(NamedTuple):
    board: Board
    reward: int
    changed: bool


def _identity(cells):
    return list(cells)


def _flip_rows(cells):
    # upside down
    return [cells[(SIZE - 1 - row) * SIZE + column] for row in range(SIZE) for column in range(SIZE)]


def _mirror(cells):
    return [cells[row * SIZE + SIZE - 1 - column] for row in range(SIZE) for column in range(SIZE)]


def _transpose(cells):
    return [cells[column * SIZE + row] for row in range(SIZE) for column in range(SIZE)]


_TRANSFORMATIONS = {
    LEFT: (_identity, _identity),
    RIGHT: (_mirror, _mirror),
    UP: (_transpose, _transpose),
    DOWN: (
        lambda cells: _transpose(_flip_rows(cells)),
        lambda cells: _flip_rows(_transpose(cells)),
    ),
}


def _slide_row(row):
    # each tile merges at most once per move
    tiles = [tile for tile in row if tile]
    merged = []
    reward = 0
    index = 0
    while index < len(tiles):
        if index + 1 < len(tiles) and tiles[index] == tiles[index + 1]:
            merged.append(2 * tiles[index])
            reward += 2 * tiles[index]
            index += 2
        else:
            merged.append(tiles[index])
            index += 1
    return merged + [0] * (SIZE - len(merged)), reward


def move(board, direction) -> MoveResult:
    """
    Slides and merges every tile of ``board`` towards ``direction``, without spawning a new tile.

    Parameters
    ----------
    board : sequence of int
        16 cells in row-major order
    direction : int
        one of LEFT, RIGHT, UP, DOWN

    Returns
    -------
    MoveResult
        the new board, the sum of merged tiles and whether anything moved
    """

    if len(board) != CELLS:
        raise ValueError(f"a board has {CELLS} cells, found {len(board)}")
    if direction not in _TRANSFORMATIONS:
        raise ValueError(f"direction must be one of {DIRECTIONS}, found {direction}")

    prepare, finish = _TRANSFORMATIONS[direction]
    cells = prepare(board)
    slid = []
    reward = 0
    for row in range(SIZE):
        new_row, row_reward = _slide_row(cells[row * SIZE : (row + 1) * SIZE])
        slid.extend(new_row)
        reward += row_reward
    result = tuple(finish(slid))
    return MoveResult(result, reward, result != tuple(board))


def legal_moves(board) -> list:
    return [direction for direction in DIRECTIONS if move(board, direction).changed]


def can_move(board) -> bool:
    """
    Whether any move changes the board: an empty cell or two equal neighbours
    """
    if 0 in board:
        return True
    for row in range(SIZE):
        for column in range(SIZE):
            tile = board[row * SIZE + column]
            if column + 1 < SIZE and board[row * SIZE + column + 1] == tile:
                return True
            if row + 1 < SIZE and board[(row + 1) * SIZE + column] == tile:
                return True
    return False


class Game2048Environment(Environment):
    """
    2048 played by the uniform random policy over the moves that change the board. After every move a 2, or a
    4 with probability ``four_probability``, appears on a uniformly chosen empty cell. The game ends when no
    move changes the board.
    """

    env_id = "game2048"

    def __init__(self, settings=None):
        super().__init__(settings)
        self.start_tiles = int(self.settings["start_tiles"])
        self.four_probability = float(self.settings["four_probability"])

    def spawn(self, board, rng) -> Board:
        empty = [index for index, tile in enumerate(board) if not tile]
        if not empty:
            return tuple(board)
        cells = list(board)
        cells[empty[rng.integers(len(empty))]] = 4 if rng.random() < self.four_probability else 2
        return tuple(cells)

    def reset(self, rng):
        board = (0,) * CELLS
        for _ in range(self.start_tiles):
            board = self.spawn(board, rng)
        return board

    def step(self, state, rng):
        # the first board-changing move of a uniformly shuffled order is uniform over the legal moves
        for direction in rng.permutation(len(DIRECTIONS)):
            outcome = move(state, DIRECTIONS[direction])
            if outcome.changed:
                break
        else:
            # only reachable when rolling out from a finished game
            return None, 0.0, True
        board = self.spawn(outcome.board, rng)
        if not can_move(board):
            return None, float(outcome.reward), True
        return board, float(outcome.reward), False

    def features(self, state):
        return np.asarray(state, dtype=np.float64)


def game2048_generate(config):
    """
    Generates the 2048 Dataset described by an EnvConfig
    """
    return Game2048Environment().generate_dataset(
        config.n_trajectories, config.horizon, config.seed
    )
