package oozie.service;

import junit.framework.TestCase;

import oozie.service.MemoryLocks;

/**
 * Concurrency tests for {@link MemoryLocks}. Each scenario starts competing
 * locker threads, lets them interleave, and compares the recorded
 * acquire/release transcript against the expected ordering.
 */
public class TestMemoryLocks extends TestCase {
    private MemoryLocks locks;

    @Override
    protected void setUp() throws Exception {
        super.setUp();
        locks = new MemoryLocks();
    }

    @Override
    protected void tearDown() throws Exception {
        locks = null;
        super.tearDown();
    }

    private static class Locker implements Runnable {
        private final MemoryLocks locks;
        private final String name;
        private final int seq;
        private final long timeout;
        private final boolean exclusive;
        private final StringBuffer sb;
        private volatile boolean finish;

        Locker(MemoryLocks locks, String name, int seq, long timeout, boolean exclusive, StringBuffer sb) {
            this.locks = locks;
            this.name = name;
            this.seq = seq;
            this.timeout = timeout;
            this.exclusive = exclusive;
            this.sb = sb;
        }

        public void run() {
            try {
                MemoryLocks.LockToken token;
                if (exclusive) {
                    token = locks.getWriteLock(name, timeout);
                }
                else {
                    token = locks.getReadLock(name, timeout);
                }
                if (token != null) {
                    sb.append(name + ":" + seq + "-acquired ");
                    while (!finish) {
                        Thread.sleep(10);
                    }
                    token.release();
                    sb.append(name + ":" + seq + "-released ");
                }
                else {
                    sb.append(name + ":" + seq + "-failed ");
                }
            }
            catch (InterruptedException ex) {
                Thread.currentThread().interrupt();
            }
        }

        public void finish() {
            finish = true;
        }
    }

    public void testWaitWriteLock() throws Exception {
        StringBuffer sb = new StringBuffer("");
        Locker l1 = new Locker(locks, "a", 1, -1L, true, sb);
        Locker l2 = new Locker(locks, "a", 2, -1L, true, sb);
        new Thread(l1).start();
        Thread.sleep(500);
        new Thread(l2).start();
        Thread.sleep(500);
        l1.finish();
        l2.finish();
        assertEquals("a:1-acquired a:1-released a:2-acquired a:2-released", sb.toString());
    }

    public void testNoWaitWriteLock() throws Exception {
        StringBuffer sb = new StringBuffer("");
        Locker l1 = new Locker(locks, "a", 1, 0L, true, sb);
        Locker l2 = new Locker(locks, "a", 2, 0L, true, sb);
        new Thread(l1).start();
        Thread.sleep(500);
        new Thread(l2).start();
        Thread.sleep(500);
        l1.finish();
        l2.finish();
        assertEquals("a:1-acquired a:2-failed a:1-released", sb.toString());
    }

    public void testReadLock() throws Exception {
        StringBuffer sb = new StringBuffer("");
        Locker l1 = new Locker(locks, "a", 1, -1L, false, sb);
        Locker l2 = new Locker(locks, "a", 2, -1L, false, sb);
        new Thread(l1).start();
        Thread.sleep(500);
        new Thread(l2).start();
        Thread.sleep(500);
        l1.finish();
        l2.finish();
        assertEquals("a:1-acquired a:2-acquired a:1-released a:2-released", sb.toString());
    }

    public void testReadWriteLock() throws Exception {
        StringBuffer sb = new StringBuffer("");
        Locker l1 = new Locker(locks, "a", 1, -1L, false, sb);
        Locker l2 = new Locker(locks, "a", 2, -1L, true, sb);
        new Thread(l1).start();
        Thread.sleep(500);
        new Thread(l2).start();
        Thread.sleep(500);
        l1.finish();
        l2.finish();
        assertEquals("a:1-acquired a:1-released a:2-acquired a:2-released", sb.toString());
    }

    public void testWriteLock() throws Exception {
        StringBuffer sb = new StringBuffer("");
        Locker l1 = new Locker(locks, "a", 1, -1L, true, sb);
        Locker l2 = new Locker(locks, "b", 2, -1L, true, sb);
        new Thread(l1).start();
        Thread.sleep(500);
        new Thread(l2).start();
        Thread.sleep(500);
        l1.finish();
        l2.finish();
        assertEquals("a:1-acquired b:2-acquired a:1-released b:2-released", sb.toString());
    }
}
