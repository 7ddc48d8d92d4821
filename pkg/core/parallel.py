"""
Varreduras em paralelo: tarefas independentes num ThreadPoolExecutor,
resultados devolvidos na ordem de entrada.
"""
import asyncio
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from django.conf import settings

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


async def _gather(func: Callable[[T], R], items: Sequence[T], threads: int) -> List[R]:
    loop = asyncio.get_running_loop()
    with ThreadPoolExecutor(max_workers=threads) as executor:
        tasks = [loop.run_in_executor(executor, func, item) for item in items]
        return list(await asyncio.gather(*tasks))


def run_parallel(func: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> List[R]:
    """Aplica func a cada item; a primeira exceção é propagada"""
    items = list(items)
    threads = min(threads or settings.SPIN7_SETTINGS['THREADS'], max(len(items), 1))
    if threads <= 1:
        return [func(item) for item in items]
    logger.debug(f"{len(items)} tarefas em {threads} threads")
    return asyncio.run(_gather(func, items, threads))
