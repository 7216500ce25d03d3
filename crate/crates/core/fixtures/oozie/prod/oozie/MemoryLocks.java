package oozie.service;

import java.util.HashMap;
import java.util.Map;
import java.util.concurrent.TimeUnit;
import java.util.concurrent.locks.Lock;
import java.util.concurrent.locks.ReentrantReadWriteLock;

/**
 * In-memory service providing fair read/write locks on named resources.
 * Callers receive a {@link LockToken}; releasing the token returns the lock.
 */
public class MemoryLocks {
    private final Map<String, ReentrantReadWriteLock> locks =
            new HashMap<String, ReentrantReadWriteLock>();

    /**
     * Handle on an acquired lock.
     */
    public class LockToken {
        private final ReentrantReadWriteLock lock;
        private final boolean exclusive;

        private LockToken(ReentrantReadWriteLock lock, boolean exclusive) {
            this.lock = lock;
            this.exclusive = exclusive;
        }

        public void release() {
            if (exclusive) {
                lock.writeLock().unlock();
            }
            else {
                lock.readLock().unlock();
            }
        }
    }

    public int size() {
        return locks.size();
    }

    public LockToken getReadLock(String resource, long wait) throws InterruptedException {
        return getLock(resource, false, wait);
    }

    public LockToken getWriteLock(String resource, long wait) throws InterruptedException {
        return getLock(resource, true, wait);
    }

    private synchronized LockToken getLock(String resource, boolean exclusive, long wait)
            throws InterruptedException {
        ReentrantReadWriteLock lock = locks.get(resource);
        if (lock == null) {
            lock = new ReentrantReadWriteLock(true);
            locks.put(resource, lock);
        }
        Lock entry;
        if (exclusive) {
            entry = lock.writeLock();
        }
        else {
            entry = lock.readLock();
        }
        boolean acquired;
        if (wait < 0) {
            entry.lock();
            acquired = true;
        }
        else {
            acquired = entry.tryLock(wait, TimeUnit.MILLISECONDS);
        }
        if (!acquired) {
            return null;
        }
        return new LockToken(lock, exclusive);
    }
}
