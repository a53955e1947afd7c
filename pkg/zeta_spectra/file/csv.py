import io
from pathlib import Path

import pandas as pd

from .jsonl import write_atomic


def read_file(path: str | Path) -> pd.DataFrame:
    """
    Read csv file and return df with contents.

    All columns are read as strings so decimal values keep every digit.

    :param path: path to file to read
    :return: df with contents as pd.DataFrame
    """
    df = pd.read_csv(path, sep=",", dtype=str, keep_default_na=False)
    return df


def to_text(df: pd.DataFrame) -> str:
    """
    Render dataframe as csv text with unix line endings.

    :param df: df with contents as pd.DataFrame
    :return: csv text
    """
    buffer = io.StringIO()
    df.to_csv(buffer, index=False, lineterminator="\n")
    return buffer.getvalue()


def write_file(df: pd.DataFrame, path: str | Path):
    """
    Write dataframe to csv file.

    :param df: df with contents as pd.DataFrame
    :param path: path to file to write
    """
    write_atomic(path, to_text(df))
