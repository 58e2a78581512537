class Either:
    """
    The outcome of a tool: a ``left`` error or a ``right`` result
    """

    def __init__(self, left=None, right=None):
        self.left = left
        self.right = right

    @staticmethod
    def Left(error):
        return Either(left=error)

    @staticmethod
    def Right(value):
        return Either(right=value)

    @staticmethod
    def attempt(fn, *args, **kwargs):
        # run fn, capturing any failure as a Left
        try:
            return Either.Right(fn(*args, **kwargs))
        except Exception as error:
            return Either.Left(error)

    # Call the left function if an error is present
    # Otherwise call the right function
    def match(self, left, right):
        if self.left is not None:
            return left(self.left)
        return right(self.right)

    def is_left(self):
        return self.left is not None
