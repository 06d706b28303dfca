#This file contains the work distribution for the Monte Carlo trials.
#Trials are cut into fixed blocks, each block owns its own random stream, and blocks are
#spread over MPI ranks (under mpiexec), a process pool, or run serially. Block results are
#always reassembled in block order so the outcome does not depend on how the work was split.
import numpy, warnings
from multiprocessing import Pool
try:
    import mpi4py
    mpi4py.rc.recv_mprobe = False
    import mpi4py.MPI as MPI
except Exception as e:
    MPI = None

def getCommunicator():
    """Use this function to get COMM_WORLD when running on more than one MPI rank, otherwise None."""
    if MPI is None:
        return None
    comm = MPI.COMM_WORLD
    return comm if comm.Get_size() > 1 else None

def setupCommunicators(study):
    """Use this function to attach the communicator, rank, and master flag to a study object."""
    study.comm = getCommunicator()
    study.rank = study.comm.Get_rank() if study.comm is not None else 0
    study.masterBool = study.rank == 0

def getBlockBoundaries(trials,blockSize):
    """Use this function to cut trials into (blockIndex, start, count) blocks of at most blockSize trials."""
    blocks = []
    for blockIndex,start in enumerate(range(0,trials,blockSize)):
        blocks.append((blockIndex,start,min(blockSize,trials-start)))
    return blocks

def splitBlocks(blocks,parts):
    """Use this function to split blocks into contiguous groups, one per rank."""
    indices = numpy.array_split(numpy.arange(len(blocks)),parts)
    return [[blocks[i] for i in group] for group in indices]

def runBlocks(blockFunction,blocks,workers=1,comm=None):
    """Use this function to evaluate blockFunction on every block and return the results in block order.
    args:
    blockFunction: picklable callable taking one (blockIndex, start, count) tuple
    blocks: list of block tuples
    workers: process pool size when not running under MPI
    comm: MPI communicator or None
    """
    comm = getCommunicator() if comm is None else comm
    if comm is not None and comm.Get_size() > 1:
        if workers > 1:
            warnings.warn("workers={} ignored under MPI, each rank runs its blocks serially.".format(workers))
        localBlocks = splitBlocks(blocks,comm.Get_size())[comm.Get_rank()]
        localResults = [blockFunction(block) for block in localBlocks]
        results = []
        for rankResults in comm.allgather(localResults): #rank order is block order
            results.extend(rankResults)
        return results
    if workers > 1 and len(blocks) > 1:
        with Pool(processes=min(workers,len(blocks))) as pool:
            return pool.map(blockFunction,blocks)
    return [blockFunction(block) for block in blocks]
